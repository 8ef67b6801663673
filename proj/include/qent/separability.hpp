#pragma once

#include "qent/bloch.hpp"
#include "qent/linalg.hpp"

#include <optional>
#include <string>

namespace qent {

enum class SepStatus { Entangled, Separable, Inconclusive };

const char* to_string(SepStatus s);

// Entangled is only claimed when witnessValue > bound + 1e-12; Separable is
// only produced by the sufficiency paths, never by the necessary criterion.
struct Verdict {
    SepStatus status = SepStatus::Inconclusive;
    double witnessValue = 0.0;
    double bound = 0.0;
    std::optional<PartitionSpec> partition;
};

// sqrt(prod d_k(d_k - 1) / 2^N); 1 for all-qubit systems.
double kyfan_bound(const Dims& dims);

// Full-tensor Ky Fan criterion: Entangled if ||T|| exceeds the bound.
Verdict kyfan_test(const Mat& rho, const Dims& dims);

// Same test on the reduced state of a subsystem subset (ascending, 1-based).
Verdict kyfan_test_subsystem(const Mat& rho, const Dims& dims, const std::vector<int>& subset);

// Merge subsystem groups into coarse parties (dims multiplied, generator
// bases rebuilt per merged dimension) and run the full test.
Verdict kyfan_test_partition(const Mat& rho, const Dims& dims,
                             const std::vector<std::vector<int>>& groups);

// Sufficient condition: weighted sum of coherence norms, pairwise nuclear
// norms and higher-order completely orthogonal weights; Separable when every
// deflation completes and the sum stays at or below 1.
Verdict sufficiency_test(const Mat& rho, const Dims& dims);

// Qubit if-and-only-if case: requires vanishing coherence vectors and lower
// tensors plus a complete deflation of the top tensor, then decides by the
// Ky Fan norm alone.
Verdict nqubit_iff_test(const Mat& rho, const Dims& dims);

// Partial-transpose check on a bipartite cut.
Verdict ppt_test(const Mat& rho, const Dims& dims, const PartitionSpec& cut);

}  // namespace qent
