#include "qent/tensor.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qent {

namespace {

// 0-based modes in backward-cyclic column order for mode n (1-based).
std::vector<int> column_modes(int n, int N) {
    std::vector<int> order;
    for (int k = n; k < N; ++k) order.push_back(k);
    for (int k = 0; k < n - 1; ++k) order.push_back(k);
    return order;
}

std::vector<long> column_strides(const std::vector<int>& order, const std::vector<int>& dims) {
    std::vector<long> cs(order.size());
    long s = 1;
    for (int j = static_cast<int>(order.size()) - 1; j >= 0; --j) {
        cs[j] = s;
        s *= dims[order[j]];
    }
    return cs;
}

void advance(std::vector<int>& idx, const std::vector<int>& dims) {
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        if (++idx[k] < dims[k]) return;
        idx[k] = 0;
    }
}

}  // namespace

RMat unfold(const DenseTensor& t, int n) {
    int N = t.order();
    if (n < 1 || n > N) throw std::invalid_argument("unfold: mode out of range");
    auto order = column_modes(n, N);
    auto cs = column_strides(order, t.dims);
    long cols = t.size() / t.dims[n - 1];
    RMat m(t.dims[n - 1], cols);
    std::vector<int> idx(N, 0);
    for (long off = 0; off < t.size(); ++off) {
        long col = 0;
        for (size_t j = 0; j < order.size(); ++j) col += idx[order[j]] * cs[j];
        m(idx[n - 1], col) = t.data[off];
        advance(idx, t.dims);
    }
    return m;
}

DenseTensor refold(const RMat& m, const std::vector<int>& dims, int n) {
    DenseTensor t(dims);
    int N = t.order();
    if (n < 1 || n > N) throw std::invalid_argument("refold: mode out of range");
    if (m.rows() != dims[n - 1] || m.rows() * m.cols() != t.size())
        throw std::invalid_argument("refold: shape mismatch");
    auto order = column_modes(n, N);
    auto cs = column_strides(order, dims);
    std::vector<int> idx(N, 0);
    for (long off = 0; off < t.size(); ++off) {
        long col = 0;
        for (size_t j = 0; j < order.size(); ++j) col += idx[order[j]] * cs[j];
        t.data[off] = m(idx[n - 1], col);
        advance(idx, dims);
    }
    return t;
}

DenseTensor mode_product(const DenseTensor& t, const RMat& a, int n) {
    if (n < 1 || n > t.order()) throw std::invalid_argument("mode_product: mode out of range");
    if (a.cols() != t.dims[n - 1]) throw std::invalid_argument("mode_product: inner dimension mismatch");
    RMat prod = a * unfold(t, n);
    auto dims = t.dims;
    dims[n - 1] = static_cast<int>(a.rows());
    return refold(prod, dims, n);
}

DenseTensor outer(const std::vector<RVec>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("outer: empty vector list");
    std::vector<int> dims;
    for (const auto& v : vectors) dims.push_back(static_cast<int>(v.size()));
    DenseTensor t(dims);
    std::vector<int> idx(dims.size(), 0);
    for (long off = 0; off < t.size(); ++off) {
        double p = 1.0;
        for (size_t k = 0; k < vectors.size(); ++k) p *= vectors[k](idx[k]);
        t.data[off] = p;
        advance(idx, dims);
    }
    return t;
}

RMat khatri_rao(const RMat& a, const RMat& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("khatri_rao: column count mismatch");
    RMat out(a.rows() * b.rows(), a.cols());
    for (long k = 0; k < a.cols(); ++k)
        for (long i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), k, b.rows(), 1) = a(i, k) * b.col(k);
    return out;
}

double euclidean_norm(const DenseTensor& t) {
    double s = 0.0;
    for (double x : t.data) s += x * x;
    return std::sqrt(s);
}

namespace {

std::vector<double> real_singular_values(const RMat& m) {
    RMat work = m;
    if (work.cols() > 4 * work.rows() && work.rows() > 0) {
        Eigen::HouseholderQR<RMat> qr(work.transpose().eval());
        RMat r = qr.matrixQR().topRows(work.rows()).triangularView<Eigen::Upper>();
        work = r.transpose().eval();
    }
    Eigen::JacobiSVD<RMat> svd(work);
    return {svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size()};
}

}  // namespace

double kyfan_norm(const DenseTensor& t) {
    double best = 0.0;
    for (int n = 1; n <= t.order(); ++n) {
        auto sv = real_singular_values(unfold(t, n));
        best = std::max(best, std::accumulate(sv.begin(), sv.end(), 0.0));
    }
    return best;
}

bool is_supersymmetric(const DenseTensor& t, double tol) {
    int N = t.order();
    for (int k = 1; k < N; ++k)
        if (t.dims[k] != t.dims[0]) throw std::invalid_argument("is_supersymmetric: dims must be equal");
    // Adjacent transpositions generate the full permutation group.
    std::vector<int> idx(N, 0), sw(N, 0);
    for (int k = 0; k + 1 < N; ++k) {
        std::fill(idx.begin(), idx.end(), 0);
        for (long off = 0; off < t.size(); ++off) {
            sw = idx;
            std::swap(sw[k], sw[k + 1]);
            if (std::abs(t.data[off] - t.at(sw)) > tol) return false;
            advance(idx, t.dims);
        }
    }
    return true;
}

namespace {

// result[i_k] = sum over all other indices of R * prod_{j != k} u_j[i_j]
RVec contract_except(const DenseTensor& r, const std::vector<RVec>& u, int k) {
    RVec out = RVec::Zero(r.dims[k]);
    std::vector<int> idx(r.order(), 0);
    for (long off = 0; off < r.size(); ++off) {
        double p = r.data[off];
        if (p != 0.0)
            for (int j = 0; j < r.order(); ++j)
                if (j != k) p *= u[j](idx[j]);
        out(idx[k]) += p;
        advance(idx, r.dims);
    }
    return out;
}

double contract_all(const DenseTensor& r, const std::vector<RVec>& u) {
    double acc = 0.0;
    std::vector<int> idx(r.order(), 0);
    for (long off = 0; off < r.size(); ++off) {
        double p = r.data[off];
        for (int j = 0; j < r.order(); ++j) p *= u[j](idx[j]);
        acc += p;
        advance(idx, r.dims);
    }
    return acc;
}

void project_out(RVec& v, const std::vector<RVec>& basis) {
    for (const auto& b : basis) v -= b.dot(v) * b;
}

}  // namespace

OrthoDecomposition orthogonal_deflate(const DenseTensor& t, int max_terms, double tol) {
    OrthoDecomposition out;
    int N = t.order();
    int cap = max_terms;
    for (int d : t.dims) cap = std::min(cap, d);
    std::vector<std::vector<RVec>> basis(N);
    DenseTensor r = t;
    std::mt19937 gen(522901);
    std::normal_distribution<double> nd(0.0, 1.0);

    auto random_complement = [&](int k) {
        RVec v(t.dims[k]);
        for (int tries = 0; tries < 20; ++tries) {
            for (int i = 0; i < t.dims[k]; ++i) v(i) = nd(gen);
            project_out(v, basis[k]);
            double n2 = v.norm();
            if (n2 > 1e-8) return RVec(v / n2);
        }
        return RVec(RVec::Zero(t.dims[k]));
    };

    for (int term = 0; term < cap; ++term) {
        if (euclidean_norm(r) <= tol) break;
        double best_w = 0.0;
        std::vector<RVec> best_u;
        for (int restart = 0; restart < 6; ++restart) {
            std::vector<RVec> u(N);
            bool dead = false;
            for (int k = 0; k < N; ++k) {
                u[k] = random_complement(k);
                if (u[k].norm() < 0.5) dead = true;
            }
            if (dead) break;
            double w = 0.0;
            for (int it = 0; it < 500; ++it) {
                // The weight is stationary in the factors, so convergence is
                // judged on factor movement, not on the weight itself.
                double moved = 0.0;
                for (int k = 0; k < N; ++k) {
                    RVec v = contract_except(r, u, k);
                    project_out(v, basis[k]);
                    double nv = v.norm();
                    if (nv < 1e-14) {
                        // Contraction vanished in the complement; restart the
                        // mode unless the complement space is exhausted.
                        v = random_complement(k);
                        nv = v.norm();
                        if (nv < 0.5) { dead = true; break; }
                    }
                    v /= nv;
                    moved = std::max(moved, std::min((v - u[k]).norm(), (v + u[k]).norm()));
                    u[k] = v;
                }
                if (dead) break;
                w = contract_all(r, u);
                if (moved < 1e-12) break;
            }
            if (dead) continue;
            if (std::abs(w) > std::abs(best_w)) {
                best_w = w;
                best_u = u;
            }
        }
        if (std::abs(best_w) < 1e-12) break;
        if (best_w < 0) {
            best_u[0] = -best_u[0];
            best_w = -best_w;
        }
        DenseTensor rank1 = outer(best_u);
        for (long off = 0; off < r.size(); ++off) r.data[off] -= best_w * rank1.data[off];
        for (int k = 0; k < N; ++k) basis[k].push_back(best_u[k]);
        out.terms.push_back({best_w, best_u});
    }
    out.residual = euclidean_norm(r);
    out.complete = out.residual <= tol;
    return out;
}

}  // namespace qent
