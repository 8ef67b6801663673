#include "qent/factor.hpp"

#include "qent/bloch.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qent {

namespace {

constexpr double kAmpEps = 1e-12;

void check_normalized(const Vec& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-8) throw std::invalid_argument("state vector not normalized");
}

std::vector<int> decode(long v, const Dims& dims) {
    std::vector<int> digits(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(v % dims[k]);
        v /= dims[k];
    }
    return digits;
}

long encode(const std::vector<int>& digits, const Dims& dims) {
    long v = 0;
    for (size_t k = 0; k < dims.size(); ++k) v = v * dims[k] + digits[k];
    return v;
}

std::vector<long> support(const Vec& psi) {
    std::vector<long> idx;
    for (long i = 0; i < psi.size(); ++i)
        if (std::abs(psi(i)) > kAmpEps) idx.push_back(i);
    return idx;
}

std::vector<long> prime_factors_desc(long n) {
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    if (n > 1) out.push_back(n);
    std::sort(out.rbegin(), out.rend());
    return out;
}

// Least block size whose largest dims can hold the largest prime factor.
int min_block_size(const Dims& dims, long p1) {
    Dims sorted = dims;
    std::sort(sorted.rbegin(), sorted.rend());
    long prod = 1;
    for (int k = 0; k < static_cast<int>(sorted.size()); ++k) {
        prod *= sorted[k];
        if (prod >= p1) return k + 1;
    }
    return static_cast<int>(sorted.size()) + 1;
}

template <typename F>
bool for_each_combination(int m, int k, F&& fn) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i + 1;
    while (true) {
        if (fn(c)) return true;
        int i = k - 1;
        while (i >= 0 && c[i] == m - k + i + 1) --i;
        if (i < 0) return false;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

Vec fix_phase(Vec v) {
    long best = 0;
    for (long i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best))) best = i;
    if (std::abs(v(best)) > kAmpEps) v *= std::conj(v(best)) / std::abs(v(best));
    return v;
}

Vec dominant_eigenvector(const Mat& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    long last = es.eigenvalues().size() - 1;
    return fix_phase(es.eigenvectors().col(last));
}

std::pair<Vec, Vec> extract_factors(const Vec& psi, const Dims& dims,
                                    const std::vector<int>& s, const std::vector<int>& t) {
    Mat rho = dm(psi);
    Vec fs = dominant_eigenvector(dims.size() == s.size() ? rho : partial_trace(rho, dims, s));
    Vec ft = dominant_eigenvector(partial_trace(rho, dims, t));
    return {fs, ft};
}

PartitionSpec make_partition(const std::vector<int>& s, int m) {
    PartitionSpec p;
    p.s = s;
    std::vector<char> in(m + 1, 0);
    for (int k : s) in[k] = 1;
    for (int k = 1; k <= m; ++k)
        if (!in[k]) p.t.push_back(k);
    return p;
}

// Shared search: first partition passing the degree criterion, in the
// prime-factor-guided order. Returns the partition only.
std::optional<PartitionSpec> find_cut(const Vec& psi, const Dims& dims) {
    int m = static_cast<int>(dims.size());
    auto idx = support(psi);
    long n = static_cast<long>(idx.size());
    if (n == 0) throw std::invalid_argument("zero state");
    if (n == 1) return make_partition({1}, m);

    auto primes = prime_factors_desc(n);
    if (primes.size() == 1) {
        // Prime support: a factorization exists iff some position carries a
        // common symbol across the whole clique.
        for (int pos = 0; pos < m; ++pos) {
            int symbol = decode(idx[0], dims)[pos];
            bool common = true;
            for (long v : idx)
                if (decode(v, dims)[pos] != symbol) {
                    common = false;
                    break;
                }
            if (common) return make_partition({pos + 1}, m);
        }
        return std::nullopt;
    }

    WeightedGraph g = graph_from_density(dm(psi), dims);
    int s1 = min_block_size(dims, primes.front());
    for (int size = s1; size <= m - 1; ++size) {
        std::optional<PartitionSpec> hit;
        for_each_combination(m, size, [&](const std::vector<int>& c) {
            PartitionSpec p = make_partition(c, m);
            if (degree_criterion(g, dims, p)) {
                hit = p;
                return true;
            }
            return false;
        });
        if (hit) return hit;
    }
    return std::nullopt;
}

}  // namespace

std::vector<const FactorTree*> FactorTree::leaves() const {
    std::vector<const FactorTree*> out;
    if (children.empty()) {
        out.push_back(this);
        return out;
    }
    for (const auto& c : children)
        for (const auto* l : c.leaves()) out.push_back(l);
    return out;
}

bool edge_closure_test(const Vec& psi, const Dims& dims, const PartitionSpec& p) {
    check_normalized(psi);
    int m = static_cast<int>(dims.size());
    check_partition(p, m);
    WeightedGraph g = graph_from_density(dm(psi), dims);
    std::vector<char> in_s(m + 1, 0);
    for (int k : p.s) in_s[k] = 1;
    for (const auto& [e, w] : g.edges) {
        auto x = decode(e.first, dims), y = decode(e.second, dims);
        auto xi = x, yi = y;
        for (int k = 0; k < m; ++k)
            if (in_s[k + 1]) std::swap(xi[k], yi[k]);
        long u = encode(xi, dims), v = encode(yi, dims);
        cdouble wi = edge_weight(g, static_cast<int>(u), static_cast<int>(v));
        if (std::abs(std::abs(wi) - std::abs(w)) > 1e-10 * std::max(1.0, std::abs(w))) return false;
    }
    return true;
}

std::optional<std::tuple<PartitionSpec, Vec, Vec>> factor_once(const Vec& psi, const Dims& dims) {
    check_normalized(psi);
    if (dims.size() < 2) throw std::invalid_argument("need at least 2 subsystems");
    auto cut = find_cut(psi, dims);
    if (!cut) return std::nullopt;
    auto [fs, ft] = extract_factors(psi, dims, cut->s, cut->t);
    return std::make_tuple(*cut, fs, ft);
}

FactorTree full_factorize(const Vec& psi, const Dims& dims) {
    check_normalized(psi);
    std::vector<int> ids;
    for (int k = 1; k <= static_cast<int>(dims.size()); ++k) ids.push_back(k);

    std::function<FactorTree(const Vec&, const Dims&, const std::vector<int>&)> rec =
        [&](const Vec& state, const Dims& d, const std::vector<int>& id) -> FactorTree {
        FactorTree node;
        node.subsystems = id;
        node.state = state;
        if (d.size() == 1) return node;
        auto cut = find_cut(state, d);
        if (!cut) return node;
        auto [fs, ft] = extract_factors(state, d, cut->s, cut->t);
        Dims ds, dt;
        std::vector<int> ids_s, ids_t;
        for (int k : cut->s) {
            ds.push_back(d[k - 1]);
            ids_s.push_back(id[k - 1]);
        }
        for (int k : cut->t) {
            dt.push_back(d[k - 1]);
            ids_t.push_back(id[k - 1]);
        }
        node.children.push_back(rec(fs, ds, ids_s));
        node.children.push_back(rec(ft, dt, ids_t));
        return node;
    };
    return rec(psi, dims, ids);
}

bool bloch_factor_oracle(const Vec& psi, const Dims& dims, const PartitionSpec& p) {
    check_normalized(psi);
    int m = static_cast<int>(dims.size());
    check_partition(p, m);
    std::vector<int> s = p.s, t = p.t;
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    std::vector<int> perm = s;
    perm.insert(perm.end(), t.begin(), t.end());
    Vec reordered = permute_subsystems(psi, dims, perm);
    long dsp = 1, dtp = 1;
    for (int k : s) dsp *= dims[k - 1];
    for (int k : t) dtp *= dims[k - 1];
    if (dsp == 1 || dtp == 1) return true;
    Dims merged = {static_cast<int>(dsp), static_cast<int>(dtp)};
    Mat rho = dm(reordered);
    DenseTensor tens = correlation_tensor(rho, merged, {1, 2});
    DenseTensor prod = outer({bloch_vector(rho, merged, 1), bloch_vector(rho, merged, 2)});
    double diff2 = 0.0;
    for (long off = 0; off < tens.size(); ++off) {
        double e = tens.data[off] - prod.data[off];
        diff2 += e * e;
    }
    return std::sqrt(diff2) <= 1e-8;
}

}  // namespace qent
