#include "qent/su_basis.hpp"

#include <cmath>

namespace qent {

GeneratorBasis su_generators(int d) {
    if (d < 2) throw std::invalid_argument("su_generators: d must be >= 2");
    GeneratorBasis b;
    b.d = d;
    if (d == 2) {
        Mat sx(2, 2), sy(2, 2), sz(2, 2);
        sx << 0, 1, 1, 0;
        sy << 0, cdouble(0, -1), cdouble(0, 1), 0;
        sz << 1, 0, 0, -1;
        b.generators = {sx, sy, sz};
        return b;
    }
    for (int l = 1; l <= d - 1; ++l) {
        Mat w = Mat::Zero(d, d);
        for (int j = 0; j < l; ++j) w(j, j) = 1.0;
        w(l, l) = -static_cast<double>(l);
        w *= std::sqrt(2.0 / (l * (l + 1.0)));
        b.generators.push_back(w);
    }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Mat u = Mat::Zero(d, d);
            u(j, k) = 1.0;
            u(k, j) = 1.0;
            b.generators.push_back(u);
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Mat v = Mat::Zero(d, d);
            v(j, k) = cdouble(0, -1);
            v(k, j) = cdouble(0, 1);
            b.generators.push_back(v);
        }
    return b;
}

double structure_constants(GeneratorBasis& basis) {
    int m = basis.m(), d = basis.d;
    basis.f.assign(static_cast<size_t>(m) * m * m, 0.0);
    basis.g.assign(static_cast<size_t>(m) * m * m, 0.0);
    // f_ijk = Tr([l_i,l_j] l_k)/(4i), g_ijk = Tr({l_i,l_j} l_k)/4.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Mat prod = basis.generators[i] * basis.generators[j];
            Mat comm = prod - basis.generators[j] * basis.generators[i];
            Mat anti = prod + basis.generators[j] * basis.generators[i];
            for (int k = 0; k < m; ++k) {
                size_t at = (static_cast<size_t>(i) * m + j) * m + k;
                basis.f[at] = ((comm * basis.generators[k]).trace() / cdouble(0, 4)).real();
                basis.g[at] = ((anti * basis.generators[k]).trace() / 4.0).real();
            }
        }
    double worst = 0.0;
    Mat eye = Mat::Identity(d, d);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Mat rhs = (2.0 / d) * (i == j ? 1.0 : 0.0) * eye;
            for (int k = 0; k < m; ++k)
                rhs += (basis.gc(i, j, k) + cdouble(0, 1) * basis.fc(i, j, k)) * basis.generators[k];
            worst = std::max(worst, (basis.generators[i] * basis.generators[j] - rhs).cwiseAbs().maxCoeff());
        }
    return worst;
}

}  // namespace qent
