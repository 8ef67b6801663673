#pragma once

#include "qent/linalg.hpp"
#include "qent/su_basis.hpp"
#include "qent/tensor.hpp"

#include <map>

namespace qent {

// Coherence vectors and correlation tensors of a multipartite density matrix.
// Subset keys are ascending 1-based subsystem index lists of size >= 2.
struct BlochRep {
    Dims dims;
    std::vector<RVec> coherence;
    std::map<std::vector<int>, DenseTensor> tensors;
};

// s_a = (d_k/2) Tr[rho_k lambda_a], length d_k^2 - 1.
RVec bloch_vector(const Mat& rho, const Dims& dims, int k);

// Entries (prod d_ki / 2^M) Tr[rho_S (lambda x ... x lambda)]; the prefactor
// is 1 when every subsystem in the subset is a qubit.
DenseTensor correlation_tensor(const Mat& rho, const Dims& dims, const std::vector<int>& subset);

BlochRep full_bloch(const Mat& rho, const Dims& dims);

Mat reconstruct(const BlochRep& b);

// True iff the full correlation tensor equals the outer product of the
// single-subsystem coherence vectors within 1e-8.
bool is_product_pure(const Vec& psi, const Dims& dims);

// |2^N Tr(rho^2) - (1 + sum ||s||^2 + sum ||T^S||^2)| for all-qubit dims.
double purity_identity(const Mat& rho, const Dims& dims);

}  // namespace qent
