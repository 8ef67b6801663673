#pragma once

#include "qent/bloch.hpp"
#include "qent/linalg.hpp"

#include <optional>

namespace qent {

// Correlation-tensor entanglement measure of an N-qubit pure state.
// eT = ||T|| - 1 (Euclidean norm), epsT = log2 ||T||.
struct MeasureResult {
    double eT = 0.0;
    double epsT = 0.0;
    double tensorNorm = 0.0;
    std::optional<double> normalizedByGhz;
};

MeasureResult e_t(const Vec& psi, bool normalize = false);
double eps_t(const Vec& psi);

// Closed forms for the named families; each is cross-checked against the
// direct computation in the test suite.
double ghz_family_et(double p, int N);
double w_state_et(int N);
double r_n(int N);                      // value on the balanced GHZ state
double wghz_superposition_et(double s);  // 3 qubits
double heisenberg_et(int N, int s);      // closed form for even N, direct otherwise

// State builders.
Vec ghz_state(int N, double p = 0.5);
Vec w_state(int N);
Vec w_tilde_state(int N);
Vec bell_state();
Vec wghz_state(double s, double phi = 0.0);
Vec w_wtilde_state(int N, double s, double phi = 0.0);
Vec heisenberg_state(int N, int s);  // uniform superposition of weight-s bitstrings
Vec basis_state(const Dims& dims, const std::vector<int>& digits);

}  // namespace qent
