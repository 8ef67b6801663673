#pragma once

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qent {

using cdouble = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Dims = std::vector<int>;

inline long total_dim(const Dims& dims) {
    long p = 1;
    for (int d : dims) p *= d;
    return p;
}

// Bipartite cut of subsystem indices {1..N}: s and t disjoint, union complete.
struct PartitionSpec {
    std::vector<int> s;
    std::vector<int> t;
};

// Throws unless p is a valid bipartition of {1..n}.
void check_partition(const PartitionSpec& p, int n);

bool is_hermitian(const Mat& a, double tol = 1e-12);

Mat kron(const Mat& a, const Mat& b);
Mat kron_all(const std::vector<Mat>& factors);

// Subsystem indices are 1-based throughout the public API.
Mat partial_trace(const Mat& rho, const Dims& dims, const std::vector<int>& keep);
Mat partial_transpose(const Mat& rho, const Dims& dims, const std::vector<int>& subset);

// Reorders tensor factors: perm[i] = original subsystem placed at slot i (1-based).
Mat permute_subsystems(const Mat& rho, const Dims& dims, const std::vector<int>& perm);
Vec permute_subsystems(const Vec& psi, const Dims& dims, const std::vector<int>& perm);

std::vector<double> hermitian_eigenvalues(const Mat& a);  // ascending
bool is_psd(const Mat& a, double tol = 1e-9);             // tol relative to max |entry|
std::vector<double> singular_values(const Mat& m);        // nonincreasing
double nuclear_norm(const Mat& m);                        // sum of singular values

Mat dm(const Vec& psi);

// Seeded sampling helpers for property tests.
Vec random_state(long d, std::mt19937& gen);
Mat random_unitary(long d, std::mt19937& gen);
Mat random_density(long d, std::mt19937& gen);

}  // namespace qent
