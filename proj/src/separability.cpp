#include "qent/separability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qent {

namespace {

void check_density(const Mat& rho, const Dims& dims, double tol = 1e-8) {
    long d = total_dim(dims);
    if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("state size does not match dims");
    if (!is_hermitian(rho, tol)) throw std::invalid_argument("state not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol) throw std::invalid_argument("state trace is not 1");
    if (!is_psd(rho, tol)) throw std::invalid_argument("state not positive semidefinite");
}

std::vector<int> all_subsystems(const Dims& dims) {
    std::vector<int> all;
    for (int k = 1; k <= static_cast<int>(dims.size()); ++k) all.push_back(k);
    return all;
}

template <typename F>
void for_each_subset(int n, int min_size, F&& fn) {
    for (int mask = 1; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) < min_size) continue;
        std::vector<int> subset;
        for (int k = 0; k < n; ++k)
            if (mask & (1 << k)) subset.push_back(k + 1);
        fn(subset);
    }
}

}  // namespace

const char* to_string(SepStatus s) {
    switch (s) {
        case SepStatus::Entangled: return "Entangled";
        case SepStatus::Separable: return "Separable";
        default: return "Inconclusive";
    }
}

double kyfan_bound(const Dims& dims) {
    double p = 1.0;
    for (int d : dims) p *= static_cast<double>(d) * (d - 1);
    return std::sqrt(p / std::pow(2.0, static_cast<int>(dims.size())));
}

Verdict kyfan_test(const Mat& rho, const Dims& dims) {
    check_density(rho, dims);
    Verdict v;
    v.witnessValue = kyfan_norm(correlation_tensor(rho, dims, all_subsystems(dims)));
    v.bound = kyfan_bound(dims);
    v.status = v.witnessValue > v.bound + 1e-12 ? SepStatus::Entangled : SepStatus::Inconclusive;
    return v;
}

Verdict kyfan_test_subsystem(const Mat& rho, const Dims& dims, const std::vector<int>& subset) {
    check_density(rho, dims);
    if (subset.size() < 2) throw std::invalid_argument("subsystem test needs at least 2 subsystems");
    int prev = 0;
    for (int k : subset) {
        if (k <= prev || k > static_cast<int>(dims.size()))
            throw std::invalid_argument("subset must be strictly ascending 1-based subsystem indices");
        prev = k;
    }
    Mat red = subset.size() == dims.size() ? rho : partial_trace(rho, dims, subset);
    Dims rdims;
    for (int k : subset) rdims.push_back(dims[k - 1]);
    return kyfan_test(red, rdims);
}

Verdict kyfan_test_partition(const Mat& rho, const Dims& dims,
                             const std::vector<std::vector<int>>& groups) {
    check_density(rho, dims);
    int n = static_cast<int>(dims.size());
    if (groups.size() < 2) throw std::invalid_argument("partition needs at least 2 groups");
    std::vector<int> seen(n + 1, 0);
    for (const auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("empty partition group");
        for (int k : g) {
            if (k < 1 || k > n || seen[k]++) throw std::invalid_argument("invalid partition group");
        }
    }
    for (int k = 1; k <= n; ++k)
        if (!seen[k]) throw std::invalid_argument("partition must cover all subsystems");

    std::vector<int> perm;
    Dims merged;
    for (auto g : groups) {
        std::sort(g.begin(), g.end());
        int dprod = 1;
        for (int k : g) {
            perm.push_back(k);
            dprod *= dims[k - 1];
        }
        merged.push_back(dprod);
    }
    Mat reordered = permute_subsystems(rho, dims, perm);
    Verdict v = kyfan_test(reordered, merged);
    if (groups.size() == 2) {
        PartitionSpec p;
        p.s = groups[0];
        p.t = groups[1];
        std::sort(p.s.begin(), p.s.end());
        std::sort(p.t.begin(), p.t.end());
        v.partition = p;
    }
    return v;
}

Verdict sufficiency_test(const Mat& rho, const Dims& dims) {
    check_density(rho, dims);
    for (size_t k = 1; k < dims.size(); ++k)
        if (dims[k] < dims[k - 1])
            throw std::invalid_argument("sufficiency test requires nondecreasing dims");
    int n = static_cast<int>(dims.size());
    double sum = 0.0;
    bool deflations_ok = true;
    for (int k = 1; k <= n; ++k) {
        double d = dims[k - 1];
        sum += std::sqrt(2.0 * (d - 1.0) / d) * bloch_vector(rho, dims, k).norm();
    }
    for_each_subset(n, 2, [&](const std::vector<int>& subset) {
        double num = 1.0, den = 1.0;
        for (int k : subset) {
            num *= dims[k - 1] - 1.0;
            den *= dims[k - 1];
        }
        double coeff = std::sqrt(std::pow(2.0, static_cast<int>(subset.size())) * num / den);
        DenseTensor t = correlation_tensor(rho, dims, subset);
        if (subset.size() == 2) {
            sum += coeff * nuclear_norm(unfold(t, 1).cast<cdouble>());
        } else {
            OrthoDecomposition dec = orthogonal_deflate(t);
            if (!dec.complete) deflations_ok = false;
            sum += coeff * dec.weight_sum();
        }
    });
    Verdict v;
    v.witnessValue = sum;
    v.bound = 1.0;
    v.status = (deflations_ok && sum <= 1.0 + 1e-12) ? SepStatus::Separable : SepStatus::Inconclusive;
    return v;
}

Verdict nqubit_iff_test(const Mat& rho, const Dims& dims) {
    check_density(rho, dims);
    for (int d : dims)
        if (d != 2) throw std::invalid_argument("qubit-only test");
    int n = static_cast<int>(dims.size());
    if (n < 2) throw std::invalid_argument("need at least 2 qubits");

    bool lower_vanish = true;
    for (int k = 1; k <= n && lower_vanish; ++k)
        if (bloch_vector(rho, dims, k).cwiseAbs().maxCoeff() > 1e-10) lower_vanish = false;
    for_each_subset(n, 2, [&](const std::vector<int>& subset) {
        if (static_cast<int>(subset.size()) == n || !lower_vanish) return;
        DenseTensor t = correlation_tensor(rho, dims, subset);
        for (double x : t.data)
            if (std::abs(x) > 1e-10) {
                lower_vanish = false;
                return;
            }
    });

    DenseTensor top = correlation_tensor(rho, dims, all_subsystems(dims));
    Verdict v;
    v.witnessValue = kyfan_norm(top);
    v.bound = 1.0;
    if (!lower_vanish) {
        v.status = SepStatus::Inconclusive;
        return v;
    }
    OrthoDecomposition dec = orthogonal_deflate(top);
    if (!dec.complete) {
        v.status = SepStatus::Inconclusive;
        return v;
    }
    v.status = v.witnessValue > 1.0 + 1e-12 ? SepStatus::Entangled : SepStatus::Separable;
    return v;
}

Verdict ppt_test(const Mat& rho, const Dims& dims, const PartitionSpec& cut) {
    check_density(rho, dims);
    check_partition(cut, static_cast<int>(dims.size()));
    Mat pt = partial_transpose(rho, dims, cut.s);
    double lmin = hermitian_eigenvalues(pt).front();
    Verdict v;
    v.witnessValue = -lmin;
    v.bound = 0.0;
    v.partition = cut;
    v.status = lmin < -1e-10 ? SepStatus::Entangled : SepStatus::Inconclusive;
    return v;
}

}  // namespace qent
