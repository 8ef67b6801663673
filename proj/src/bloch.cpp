#include "qent/bloch.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qent {

namespace {

void check_subset(const Dims& dims, const std::vector<int>& subset, size_t min_size) {
    if (subset.size() < min_size) throw std::invalid_argument("subset too small");
    int prev = 0;
    for (int k : subset) {
        if (k <= prev || k > static_cast<int>(dims.size()))
            throw std::invalid_argument("subset must be strictly ascending 1-based subsystem indices");
        prev = k;
    }
}

void check_state(const Mat& rho, const Dims& dims, double tol = 1e-8) {
    long d = total_dim(dims);
    if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("density matrix size does not match dims");
    if (!is_hermitian(rho, tol)) throw std::invalid_argument("density matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol) throw std::invalid_argument("density matrix trace is not 1");
}

}  // namespace

RVec bloch_vector(const Mat& rho, const Dims& dims, int k) {
    check_state(rho, dims);
    if (k < 1 || k > static_cast<int>(dims.size())) throw std::invalid_argument("subsystem index out of range");
    Mat red = dims.size() == 1 ? rho : partial_trace(rho, dims, {k});
    int d = dims[k - 1];
    auto basis = su_generators(d);
    RVec s(d * d - 1);
    for (int a = 0; a < d * d - 1; ++a)
        s(a) = 0.5 * d * (red * basis.generators[a]).trace().real();
    return s;
}

DenseTensor correlation_tensor(const Mat& rho, const Dims& dims, const std::vector<int>& subset) {
    check_state(rho, dims);
    check_subset(dims, subset, 2);
    Mat rs = subset.size() == dims.size() ? rho : partial_trace(rho, dims, subset);
    Dims ds;
    for (int k : subset) ds.push_back(dims[k - 1]);
    int M = static_cast<int>(ds.size());

    std::map<int, GeneratorBasis> bases;
    for (int d : ds)
        if (!bases.count(d)) bases.emplace(d, su_generators(d));

    // Contract one site at a time. Layout of cur before step k (0-based):
    // [a_1..a_k][i_{k+1}][i_rest][j_{k+1}][j_rest], generator indices slowest.
    long r = total_dim(ds);
    std::vector<cdouble> cur(static_cast<size_t>(r) * r);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) cur[i * r + j] = rs(i, j);

    long a_total = 1;
    long rem = r;
    for (int k = 0; k < M; ++k) {
        int e = ds[k];
        int g = e * e - 1;
        long rp = rem / e;
        const auto& basis = bases.at(e);
        double pref = 0.5 * e;
        std::vector<cdouble> nxt(static_cast<size_t>(a_total) * g * rp * rp, cdouble(0.0, 0.0));
        for (long a = 0; a < a_total; ++a)
            for (int ga = 0; ga < g; ++ga) {
                const Mat& lam = basis.generators[ga];
                cdouble* dst = &nxt[(a * g + ga) * rp * rp];
                for (int i1 = 0; i1 < e; ++i1)
                    for (int j1 = 0; j1 < e; ++j1) {
                        cdouble w = pref * lam(j1, i1);
                        if (std::abs(w) == 0.0) continue;
                        const cdouble* src = &cur[((a * e + i1) * rp * e + j1) * rp];
                        for (long ir = 0; ir < rp; ++ir)
                            for (long jr = 0; jr < rp; ++jr)
                                dst[ir * rp + jr] += w * src[ir * e * rp + jr];
                    }
            }
        cur.swap(nxt);
        a_total *= g;
        rem = rp;
    }

    Dims tdims;
    for (int e : ds) tdims.push_back(e * e - 1);
    DenseTensor t(tdims);
    for (long off = 0; off < a_total; ++off) t.data[off] = cur[off].real();
    return t;
}

BlochRep full_bloch(const Mat& rho, const Dims& dims) {
    check_state(rho, dims);
    if (!is_psd(rho, 1e-8)) throw std::invalid_argument("density matrix not positive semidefinite");
    int n = static_cast<int>(dims.size());
    if (n > 12) throw std::invalid_argument("full_bloch limited to 12 subsystems");
    BlochRep b;
    b.dims = dims;
    for (int k = 1; k <= n; ++k) b.coherence.push_back(bloch_vector(rho, dims, k));
    for (int mask = 1; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
        std::vector<int> subset;
        for (int k = 0; k < n; ++k)
            if (mask & (1 << k)) subset.push_back(k + 1);
        b.tensors.emplace(subset, correlation_tensor(rho, dims, subset));
    }
    return b;
}

Mat reconstruct(const BlochRep& b) {
    int n = static_cast<int>(b.dims.size());
    if (static_cast<int>(b.coherence.size()) != n) throw std::invalid_argument("coherence count mismatch");
    long d = total_dim(b.dims);
    std::map<int, GeneratorBasis> bases;
    for (int dk : b.dims)
        if (!bases.count(dk)) bases.emplace(dk, su_generators(dk));
    for (int k = 0; k < n; ++k)
        if (b.coherence[k].size() != b.dims[k] * b.dims[k] - 1)
            throw std::invalid_argument("coherence vector length mismatch");

    Mat acc = Mat::Identity(d, d);
    auto add_term = [&](const std::vector<int>& subset, const std::vector<int>& alpha, double coeff) {
        if (coeff == 0.0) return;
        Mat op = Mat::Identity(1, 1);
        size_t pos = 0;
        for (int k = 1; k <= n; ++k) {
            if (pos < subset.size() && subset[pos] == k) {
                op = kron(op, bases.at(b.dims[k - 1]).generators[alpha[pos]]);
                ++pos;
            } else {
                op = kron(op, Mat::Identity(b.dims[k - 1], b.dims[k - 1]));
            }
        }
        acc += coeff * op;
    };

    for (int k = 1; k <= n; ++k) {
        const RVec& s = b.coherence[k - 1];
        for (int a = 0; a < s.size(); ++a) add_term({k}, {a}, s(a));
    }
    for (const auto& [subset, t] : b.tensors) {
        std::vector<int> expect;
        for (int k : subset) expect.push_back(b.dims[k - 1] * b.dims[k - 1] - 1);
        if (t.dims != expect) throw std::invalid_argument("tensor shape mismatch");
        std::vector<int> alpha(subset.size(), 0);
        for (long off = 0; off < t.size(); ++off) {
            add_term(subset, alpha, t.data[off]);
            for (int k = static_cast<int>(alpha.size()) - 1; k >= 0; --k) {
                if (++alpha[k] < t.dims[k]) break;
                alpha[k] = 0;
            }
        }
    }
    return acc / static_cast<double>(d);
}

bool is_product_pure(const Vec& psi, const Dims& dims) {
    if (std::abs(psi.norm() - 1.0) > 1e-8) throw std::invalid_argument("state vector not normalized");
    Mat rho = dm(psi);
    int n = static_cast<int>(dims.size());
    std::vector<int> all;
    for (int k = 1; k <= n; ++k) all.push_back(k);
    if (n == 1) return true;
    DenseTensor t = correlation_tensor(rho, dims, all);
    std::vector<RVec> s;
    for (int k = 1; k <= n; ++k) s.push_back(bloch_vector(rho, dims, k));
    DenseTensor prod = outer(s);
    double diff2 = 0.0;
    for (long off = 0; off < t.size(); ++off) {
        double e = t.data[off] - prod.data[off];
        diff2 += e * e;
    }
    return std::sqrt(diff2) <= 1e-8;
}

double purity_identity(const Mat& rho, const Dims& dims) {
    for (int d : dims)
        if (d != 2) throw std::invalid_argument("purity identity requires qubit subsystems");
    check_state(rho, dims);
    int n = static_cast<int>(dims.size());
    double total = 1.0;
    for (int k = 1; k <= n; ++k) total += bloch_vector(rho, dims, k).squaredNorm();
    for (int mask = 1; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
        std::vector<int> subset;
        for (int k = 0; k < n; ++k)
            if (mask & (1 << k)) subset.push_back(k + 1);
        DenseTensor t = correlation_tensor(rho, dims, subset);
        double n2 = 0.0;
        for (double x : t.data) n2 += x * x;
        total += n2;
    }
    double purity = std::pow(2.0, n) * (rho * rho).trace().real();
    return std::abs(purity - total);
}

}  // namespace qent
