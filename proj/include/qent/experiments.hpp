#pragma once

#include "qent/linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qent {

// Bisection result for a one-parameter noisy family. outcome is "crossed"
// when the witness passes the bound inside (0,1); "never" and "always" mark
// the flat cases, with pStar meaningless (NaN).
struct ThresholdScan {
    std::string family;
    double pStar = 0.0;
    double bound = 0.0;
    int iterations = 0;
    std::string outcome;
    std::vector<std::pair<double, double>> curve;  // 21-point pre-scan (p, witness)
};

// (1-p)/D I + p |psi><psi|
Mat noisy_state(const Vec& psi, double p, const Dims& dims);

// Reduced state of the noisy W family after tracing n of N qubits:
// (1-p)/2^(N-n) I + p [ (N-n)/N W-projector + n/N ground-projector ].
Mat reduced_w_noisy(int N, int n, double p);

// Bisects the smallest p where witness(p) exceeds bound. The witness must be
// nondecreasing in p; a non-monotone pre-scan aborts with an exception.
ThresholdScan threshold_bisect(const std::string& family,
                               const std::function<double(double)>& witness, double bound);

// Equal mixture of the four two-qubit Bell projectors paired across the
// 12|34 split.
Mat smolin_state();

// Four-qubit bound entangled mixture of the GHZ projector with the eight
// single-excitation projectors and their bit-flips.
Mat dur_state();

struct GroverPoint {
    int iteration = 0;
    double probability = 0.0;  // of measuring the target string
    double eT = 0.0;
};

// Entanglement trace of Grover search on N qubits; runs for
// ceil((pi/4) sqrt(2^N)) + 2 iterations past the initial state.
std::vector<GroverPoint> grover_trace(int N, const std::string& target_bits);

// Two-column CSV with header "x,value" and LF line endings.
std::string scan_emit(const std::vector<std::pair<double, double>>& rows);

}  // namespace qent
