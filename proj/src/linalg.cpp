#include "qent/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <numeric>

namespace qent {

bool is_hermitian(const Mat& a, double tol) {
    if (a.rows() != a.cols()) return false;
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat kron_all(const std::vector<Mat>& factors) {
    if (factors.empty()) throw std::invalid_argument("kron_all: empty factor list");
    Mat out = factors.front();
    for (size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
    return out;
}

namespace {

void check_dims(const Mat& rho, const Dims& dims) {
    if (rho.rows() != rho.cols() || rho.rows() != total_dim(dims))
        throw std::invalid_argument("matrix side does not match dimension product");
    for (int d : dims)
        if (d < 2) throw std::invalid_argument("subsystem dimensions must be >= 2");
}

// Row-major multi-index decode: subsystem 1 is the slowest index.
std::vector<int> strides_of(const Dims& dims) {
    int n = static_cast<int>(dims.size());
    std::vector<int> st(n, 1);
    for (int k = n - 2; k >= 0; --k) st[k] = st[k + 1] * dims[k + 1];
    return st;
}

}  // namespace

Mat partial_trace(const Mat& rho, const Dims& dims, const std::vector<int>& keep) {
    check_dims(rho, dims);
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    int n = static_cast<int>(dims.size());
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 1 || k > n) throw std::invalid_argument("partial_trace: subsystem index out of range");
        kept[k - 1] = true;
    }
    Dims kdims, tdims;
    std::vector<int> kpos, tpos;
    for (int i = 0; i < n; ++i)
        (kept[i] ? (kdims.push_back(dims[i]), kpos.push_back(i)) : (tdims.push_back(dims[i]), tpos.push_back(i)));
    long Dk = total_dim(kdims);
    long Dt = tdims.empty() ? 1 : total_dim(tdims);
    auto st = strides_of(dims);

    auto assemble = [&](long kidx, long tidx) {
        long full = 0;
        for (int j = static_cast<int>(kpos.size()) - 1; j >= 0; --j) {
            full += (kidx % kdims[j]) * st[kpos[j]];
            kidx /= kdims[j];
        }
        for (int j = static_cast<int>(tpos.size()) - 1; j >= 0; --j) {
            full += (tidx % tdims[j]) * st[tpos[j]];
            tidx /= tdims[j];
        }
        return full;
    };

    Mat out = Mat::Zero(Dk, Dk);
    for (long i = 0; i < Dk; ++i)
        for (long j = 0; j < Dk; ++j) {
            cdouble acc = 0.0;
            for (long t = 0; t < Dt; ++t) acc += rho(assemble(i, t), assemble(j, t));
            out(i, j) = acc;
        }
    return out;
}

Mat partial_transpose(const Mat& rho, const Dims& dims, const std::vector<int>& subset) {
    check_dims(rho, dims);
    int n = static_cast<int>(dims.size());
    std::vector<bool> flip(n, false);
    for (int k : subset) {
        if (k < 1 || k > n) throw std::invalid_argument("partial_transpose: subsystem index out of range");
        flip[k - 1] = true;
    }
    auto st = strides_of(dims);
    long D = rho.rows();
    Mat out(D, D);
    std::vector<int> ri(n), ci(n);
    for (long r = 0; r < D; ++r) {
        long rr = r;
        for (int k = 0; k < n; ++k) { ri[k] = static_cast<int>(rr / st[k]); rr %= st[k]; }
        for (long c = 0; c < D; ++c) {
            long cc = c;
            for (int k = 0; k < n; ++k) { ci[k] = static_cast<int>(cc / st[k]); cc %= st[k]; }
            long nr = 0, nc = 0;
            for (int k = 0; k < n; ++k) {
                nr += (flip[k] ? ci[k] : ri[k]) * st[k];
                nc += (flip[k] ? ri[k] : ci[k]) * st[k];
            }
            out(nr, nc) = rho(r, c);
        }
    }
    return out;
}

Mat permute_subsystems(const Mat& rho, const Dims& dims, const std::vector<int>& perm) {
    check_dims(rho, dims);
    int n = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permute_subsystems: bad permutation");
    Dims ndims(n);
    for (int i = 0; i < n; ++i) ndims[i] = dims[perm[i] - 1];
    auto ost = strides_of(dims);
    auto nst = strides_of(ndims);
    long D = rho.rows();
    std::vector<long> rowmap(D);
    std::vector<int> idx(n);
    for (long r = 0; r < D; ++r) {
        long rr = r;
        for (int k = 0; k < n; ++k) { idx[k] = static_cast<int>(rr / ost[k]); rr %= ost[k]; }
        long nr = 0;
        for (int k = 0; k < n; ++k) nr += idx[perm[k] - 1] * nst[k];
        rowmap[r] = nr;
    }
    Mat out(D, D);
    for (long r = 0; r < D; ++r)
        for (long c = 0; c < D; ++c) out(rowmap[r], rowmap[c]) = rho(r, c);
    return out;
}

Vec permute_subsystems(const Vec& psi, const Dims& dims, const std::vector<int>& perm) {
    int n = static_cast<int>(dims.size());
    if (psi.size() != total_dim(dims) || static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permute_subsystems: shape mismatch");
    Dims ndims(n);
    for (int i = 0; i < n; ++i) ndims[i] = dims[perm[i] - 1];
    auto ost = strides_of(dims);
    auto nst = strides_of(ndims);
    Vec out(psi.size());
    std::vector<int> idx(n);
    for (long r = 0; r < psi.size(); ++r) {
        long rr = r;
        for (int k = 0; k < n; ++k) { idx[k] = static_cast<int>(rr / ost[k]); rr %= ost[k]; }
        long nr = 0;
        for (int k = 0; k < n; ++k) nr += idx[perm[k] - 1] * nst[k];
        out(nr) = psi(r);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const Mat& a) {
    if (!is_hermitian(a, 1e-9)) throw std::invalid_argument("hermitian_eigenvalues: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
    return ev;  // Eigen returns ascending order
}

bool is_psd(const Mat& a, double tol) {
    auto ev = hermitian_eigenvalues(a);
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return ev.front() >= -tol * scale;
}

std::vector<double> singular_values(const Mat& m) {
    // Wide matrices are reduced by QR of the transpose first; the square factor
    // keeps the full-precision SVD cheap for the I_n x (prod I) unfoldings.
    Mat work = m;
    if (work.cols() > 4 * work.rows() && work.rows() > 0) {
        Eigen::HouseholderQR<Mat> qr(work.transpose().eval());
        Mat r = qr.matrixQR()
                    .topRows(work.rows())
                    .triangularView<Eigen::Upper>();
        work = r.adjoint().eval();
    }
    Eigen::JacobiSVD<Mat> svd(work);
    std::vector<double> sv(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

double nuclear_norm(const Mat& m) {
    auto sv = singular_values(m);
    return std::accumulate(sv.begin(), sv.end(), 0.0);
}

Mat dm(const Vec& psi) { return psi * psi.adjoint(); }

void check_partition(const PartitionSpec& p, int n) {
    if (p.s.empty() || p.t.empty()) throw std::invalid_argument("partition blocks must be nonempty");
    std::vector<int> seen(n + 1, 0);
    for (int k : p.s) {
        if (k < 1 || k > n || seen[k]++) throw std::invalid_argument("invalid partition");
    }
    for (int k : p.t) {
        if (k < 1 || k > n || seen[k]++) throw std::invalid_argument("invalid partition");
    }
    for (int k = 1; k <= n; ++k)
        if (!seen[k]) throw std::invalid_argument("partition must cover all subsystems");
}

Vec random_state(long d, std::mt19937& gen) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vec v(d);
    for (long i = 0; i < d; ++i) v(i) = cdouble(nd(gen), nd(gen));
    v.normalize();
    return v;
}

Mat random_unitary(long d, std::mt19937& gen) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat g(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) g(i, j) = cdouble(nd(gen), nd(gen));
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long i = 0; i < d; ++i) {
        cdouble ph = r(i, i) / std::abs(r(i, i));
        q.col(i) *= ph;
    }
    return q;
}

Mat random_density(long d, std::mt19937& gen) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat g(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) g(i, j) = cdouble(nd(gen), nd(gen));
    Mat rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

}  // namespace qent
