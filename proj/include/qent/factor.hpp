#pragma once

#include "qent/graph.hpp"
#include "qent/linalg.hpp"

#include <optional>
#include <tuple>

namespace qent {

// Recursive product structure of a pure state. `subsystems` are original
// 1-based indices in ascending order; `state` lives on their dims in that
// order. A node without children is an irreducible factor.
struct FactorTree {
    std::vector<int> subsystems;
    Vec state;
    std::vector<FactorTree> children;

    std::vector<const FactorTree*> leaves() const;
};

// True iff the edge set of the state's graph is closed under the partial
// transpose on cut p, with matching weight moduli.
bool edge_closure_test(const Vec& psi, const Dims& dims, const PartitionSpec& p);

// First cut (in the prime-factor-guided enumeration) whose degree criterion
// passes, with the two recovered factors; nullopt when fully entangled.
std::optional<std::tuple<PartitionSpec, Vec, Vec>> factor_once(const Vec& psi, const Dims& dims);

FactorTree full_factorize(const Vec& psi, const Dims& dims);

// Independent two-block check: the coarse-grained correlation tensor must
// equal the outer product of the block coherence vectors.
bool bloch_factor_oracle(const Vec& psi, const Dims& dims, const PartitionSpec& p);

}  // namespace qent
