#pragma once

#include "qent/linalg.hpp"

#include <Eigen/Dense>

namespace qent {

using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Real multiway array stored last-index-fastest. Mode arguments are 1-based.
struct DenseTensor {
    std::vector<int> dims;
    std::vector<double> data;

    DenseTensor() = default;
    explicit DenseTensor(std::vector<int> d) : dims(std::move(d)) {
        long n = 1;
        for (int x : dims) {
            if (x < 1) throw std::invalid_argument("tensor dimensions must be >= 1");
            n *= x;
        }
        data.assign(n, 0.0);
    }

    int order() const { return static_cast<int>(dims.size()); }
    long size() const { return static_cast<long>(data.size()); }

    double& at(const std::vector<int>& idx) { return data[offset(idx)]; }
    double at(const std::vector<int>& idx) const { return data[offset(idx)]; }

    long offset(const std::vector<int>& idx) const {
        long o = 0;
        for (int k = 0; k < order(); ++k) o = o * dims[k] + idx[k];
        return o;
    }
};

// Backward-cyclic matrix unfolding: rows run over mode n; columns run over the
// remaining modes in the order n+1, ..., N, 1, ..., n-1 with the first of
// those slowest.
RMat unfold(const DenseTensor& t, int n);
DenseTensor refold(const RMat& m, const std::vector<int>& dims, int n);
DenseTensor mode_product(const DenseTensor& t, const RMat& a, int n);
DenseTensor outer(const std::vector<RVec>& vectors);
RMat khatri_rao(const RMat& a, const RMat& b);
double euclidean_norm(const DenseTensor& t);
double kyfan_norm(const DenseTensor& t);
bool is_supersymmetric(const DenseTensor& t, double tol = 1e-10);

// One term of a completely orthogonal rank-1 expansion.
struct Rank1Term {
    double weight = 0.0;            // positive
    std::vector<RVec> factors;      // unit vectors, one per mode
};

struct OrthoDecomposition {
    std::vector<Rank1Term> terms;
    double residual = 0.0;          // Euclidean norm of what is left
    bool complete = false;          // residual under tolerance
    double weight_sum() const {
        double s = 0.0;
        for (const auto& t : terms) s += t.weight;
        return s;
    }
};

// Greedy completely orthogonal deflation: each extracted term's mode-k vector
// is orthogonal to every previously extracted mode-k vector. Alternating power
// iteration restricted to the orthocomplements; deterministic (seeded restarts).
OrthoDecomposition orthogonal_deflate(const DenseTensor& t, int max_terms = 50, double tol = 1e-8);

}  // namespace qent
