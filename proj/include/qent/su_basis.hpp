#pragma once

#include "qent/linalg.hpp"

namespace qent {

// Hermitian traceless generator set for SU(d) with Tr(l_i l_j) = 2 delta_ij.
// Order: (sx, sy, sz) for d = 2; diagonal block w_1..w_{d-1} first, then the
// symmetric pairs u_jk (j < k, lexicographic), then the antisymmetric v_jk
// for d >= 3.
struct GeneratorBasis {
    int d = 0;
    std::vector<Mat> generators;
    // Structure constants of l_i l_j = (2/d) delta_ij I + i f_ijk l_k + g_ijk l_k,
    // flattened as [i][j][k] with m = d*d - 1 per axis.
    std::vector<double> f, g;

    int m() const { return d * d - 1; }
    double fc(int i, int j, int k) const { return f[(static_cast<size_t>(i) * m() + j) * m() + k]; }
    double gc(int i, int j, int k) const { return g[(static_cast<size_t>(i) * m() + j) * m() + k]; }
};

GeneratorBasis su_generators(int d);

// Fills f and g on an existing basis; returns max entrywise residual of the
// product expansion identity.
double structure_constants(GeneratorBasis& basis);

}  // namespace qent
