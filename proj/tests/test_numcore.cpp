#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qent/linalg.hpp"
#include "qent/su_basis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace qent;

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

Mat pauli(int i) {
    Mat m(2, 2);
    switch (i) {
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cdouble(0, -1), cdouble(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

}  // namespace

TEST_CASE("generator basis for d=2 is the Pauli triple") {
    auto basis = su_generators(2);
    REQUIRE(basis.generators.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(max_abs(basis.generators[i] - pauli(i + 1)) == 0.0);
}

TEST_CASE("generators are traceless, Hermitian and orthogonal for d=2,3,4") {
    for (int d : {2, 3, 4}) {
        auto basis = su_generators(d);
        int m = basis.m();
        REQUIRE(static_cast<int>(basis.generators.size()) == m);
        for (int i = 0; i < m; ++i) {
            const Mat& a = basis.generators[i];
            CHECK(std::abs(a.trace()) < 1e-12);
            CHECK(is_hermitian(a, 1e-12));
            for (int j = 0; j < m; ++j) {
                cdouble hs = (a * basis.generators[j]).trace();
                double expect = (i == j) ? 2.0 : 0.0;
                CHECK(std::abs(hs - expect) < 1e-10);
            }
        }
    }
}

TEST_CASE("structure constants satisfy the product expansion for d=2,3,4") {
    for (int d : {2, 3, 4}) {
        auto basis = su_generators(d);
        double residual = structure_constants(basis);
        CHECK(residual <= 1e-10);

        int m = basis.m();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k) {
                    CHECK(basis.fc(i, j, k) == doctest::Approx(-basis.fc(j, i, k)).epsilon(1e-12));
                    CHECK(basis.gc(i, j, k) == doctest::Approx(basis.gc(j, i, k)).epsilon(1e-12));
                }
    }
}

TEST_CASE("qubit structure constants reduce to the Levi-Civita symbol") {
    // With the product expansion l_i l_j = delta_ij I + i f_ijk l_k the Pauli
    // algebra fixes f to the plain Levi-Civita symbol and kills g.
    auto basis = su_generators(2);
    structure_constants(basis);
    auto eps = [](int i, int j, int k) {
        return double((i - j) * (j - k) * (k - i)) / 2.0;
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                CHECK(basis.fc(i, j, k) == doctest::Approx(eps(i, j, k)).epsilon(1e-12));
                CHECK(std::abs(basis.gc(i, j, k)) < 1e-12);
            }
}

TEST_CASE("qutrit symmetric constants close the diagonal pair onto the second diagonal") {
    auto basis = su_generators(3);
    structure_constants(basis);
    // Both diagonal generators square onto the second diagonal one.
    CHECK(basis.gc(0, 0, 1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("hermitian eigenvalues are permutation invariant") {
    std::mt19937 gen(811);
    for (int trial = 0; trial < 20; ++trial) {
        Mat a = random_density(5, gen);
        Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
        perm.setIdentity();
        std::shuffle(perm.indices().data(), perm.indices().data() + 5, gen);
        Mat p = perm.toDenseMatrix().cast<cdouble>();
        auto ev1 = hermitian_eigenvalues(a);
        auto ev2 = hermitian_eigenvalues(p * a * p.transpose());
        for (size_t i = 0; i < ev1.size(); ++i)
            CHECK(ev1[i] == doctest::Approx(ev2[i]).epsilon(1e-10));
    }
}

TEST_CASE("partial trace of a product splits into factors") {
    std::mt19937 gen(812);
    for (int da : {2, 3})
        for (int db : {2, 3}) {
            Mat a = random_density(da, gen);
            Mat b = random_density(db, gen);
            Mat ab = kron(a, b);
            Dims dims{da, db};
            CHECK(max_abs(partial_trace(ab, dims, {1}) - a) < 1e-12);
            CHECK(max_abs(partial_trace(ab, dims, {2}) - b) < 1e-12);
        }
}

TEST_CASE("partial trace drops to the full trace when nothing is kept across") {
    std::mt19937 gen(813);
    Mat a = random_density(2, gen);
    Mat b = random_density(3, gen);
    Mat c = random_density(2, gen);
    Mat abc = kron(kron(a, b), c);
    Dims dims{2, 3, 2};
    CHECK(max_abs(partial_trace(abc, dims, {1, 3}) - kron(a, c)) < 1e-12);
    CHECK(max_abs(partial_trace(abc, dims, {2}) - b) < 1e-12);
}

TEST_CASE("partial transpose is an involution") {
    std::mt19937 gen(814);
    Dims dims{2, 3, 2};
    Mat rho = random_density(12, gen);
    for (auto& subset : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 3}, {1, 2, 3}}) {
        Mat once = partial_transpose(rho, dims, subset);
        Mat twice = partial_transpose(once, dims, subset);
        CHECK(max_abs(twice - rho) < 1e-14);
    }
}

TEST_CASE("partial transpose on every subsystem is the full transpose") {
    std::mt19937 gen(815);
    Dims dims{2, 2, 3};
    Mat rho = random_density(12, gen);
    CHECK(max_abs(partial_transpose(rho, dims, {1, 2, 3}) - rho.transpose()) < 1e-14);
}

TEST_CASE("permute_subsystems reorders kron factors") {
    std::mt19937 gen(816);
    Mat a = random_density(2, gen);
    Mat b = random_density(3, gen);
    Mat c = random_density(4, gen);
    Mat abc = kron_all({a, b, c});
    Dims dims{2, 3, 4};
    CHECK(max_abs(permute_subsystems(abc, dims, {3, 1, 2}) - kron_all({c, a, b})) < 1e-13);
    CHECK(max_abs(permute_subsystems(abc, dims, {2, 3, 1}) - kron_all({b, c, a})) < 1e-13);
}

TEST_CASE("permute_subsystems acts consistently on vectors and their projectors") {
    std::mt19937 gen(817);
    Dims dims{2, 3, 2};
    Vec psi = random_state(12, gen);
    std::vector<int> perm{2, 3, 1};
    Vec phi = permute_subsystems(psi, dims, perm);
    CHECK(max_abs(dm(phi) - permute_subsystems(dm(psi), dims, perm)) < 1e-13);
}

TEST_CASE("psd check accepts densities and rejects indefinite matrices") {
    std::mt19937 gen(818);
    CHECK(is_psd(random_density(6, gen)));
    Mat flip = Mat::Identity(3, 3);
    flip(2, 2) = -0.5;
    CHECK(!is_psd(flip));
}

TEST_CASE("nuclear norm of a unitary equals the dimension") {
    std::mt19937 gen(819);
    for (long d : {2L, 4L, 5L}) CHECK(nuclear_norm(random_unitary(d, gen)) == doctest::Approx(double(d)).epsilon(1e-10));
}

TEST_CASE("singular values come back nonincreasing") {
    std::mt19937 gen(820);
    Mat m = Mat::Random(4, 7);
    auto sv = singular_values(m);
    REQUIRE(sv.size() == 4);
    for (size_t i = 1; i < sv.size(); ++i) CHECK(sv[i - 1] >= sv[i] - 1e-14);
}

TEST_CASE("pure qudit coherence vector has the fixed norm and closes under g") {
    std::mt19937 gen(821);
    for (int d : {2, 3, 4}) {
        auto basis = su_generators(d);
        structure_constants(basis);
        int m = basis.m();
        for (int trial = 0; trial < 5; ++trial) {
            Mat rho = dm(random_state(d, gen));
            std::vector<double> s(m);
            for (int i = 0; i < m; ++i)
                s[i] = (d / 2.0) * (rho * basis.generators[i]).trace().real();

            double norm = 0.0;
            for (double v : s) norm += v * v;
            norm = std::sqrt(norm);
            CHECK(norm == doctest::Approx(std::sqrt(d * (d - 1) / 2.0)).epsilon(1e-9));

            for (int k = 0; k < m; ++k) {
                double lhs = 0.0;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) lhs += s[i] * s[j] * basis.gc(i, j, k);
                CHECK(lhs == doctest::Approx((d - 2.0) * s[k]).epsilon(1e-8).scale(1.0));
            }
        }
    }
}

TEST_CASE("partition validation flags overlaps and gaps") {
    CHECK_NOTHROW(check_partition({{1, 3}, {2, 4}}, 4));
    CHECK_THROWS_AS(check_partition({{1}, {2}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(check_partition({{1, 2}, {2, 3}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(check_partition({{}, {1, 2}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(check_partition({{1, 5}, {2, 3, 4}}, 4), std::invalid_argument);
}

TEST_CASE("generator construction rejects d below 2") {
    CHECK_THROWS_AS(su_generators(1), std::invalid_argument);
}
