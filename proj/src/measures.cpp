#include "qent/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace qent {

namespace {

int qubit_count(const Vec& psi) {
    long len = psi.size();
    int n = 0;
    while ((1L << n) < len) ++n;
    if ((1L << n) != len) throw std::invalid_argument("state dimension is not a power of 2");
    return n;
}

void check_normalized(const Vec& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-8) throw std::invalid_argument("state vector not normalized");
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return std::round(r);
}

// Coefficient of t^m in (1-t)^y (1+t)^x.
double poly_coeff(int x, int y, int m) {
    double c = 0.0;
    for (int j = std::max(0, m - x); j <= std::min(y, m); ++j)
        c += (j % 2 ? -1.0 : 1.0) * binom(y, j) * binom(x, m - j);
    return c;
}

}  // namespace

MeasureResult e_t(const Vec& psi, bool normalize) {
    check_normalized(psi);
    int n = qubit_count(psi);
    if (n < 1) throw std::invalid_argument("empty state");
    Dims dims(n, 2);
    MeasureResult r;
    if (n == 1) {
        r.tensorNorm = 1.0;  // single-qubit convention: no correlation content
    } else {
        std::vector<int> all;
        for (int k = 1; k <= n; ++k) all.push_back(k);
        r.tensorNorm = euclidean_norm(correlation_tensor(dm(psi), dims, all));
    }
    r.eT = r.tensorNorm - 1.0;
    r.epsT = std::log2(r.tensorNorm);
    if (normalize) r.normalizedByGhz = r.eT / r_n(n < 2 ? 2 : n);
    return r;
}

double eps_t(const Vec& psi) { return e_t(psi).epsT; }

double ghz_family_et(double p, int N) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
    if (N < 2) throw std::invalid_argument("need at least 2 qubits");
    double even_sum = 0.0;  // binom(N,2k) over k >= 1
    for (int k = 1; 2 * k <= N; ++k) even_sum += binom(N, 2 * k);
    double t3 = p + (N % 2 ? -1.0 : 1.0) * (1.0 - p);
    double norm2 = 4.0 * p * (1.0 - p) + t3 * t3 + 4.0 * p * (1.0 - p) * even_sum;
    return std::sqrt(norm2) - 1.0;
}

double w_state_et(int N) {
    if (N < 3) throw std::invalid_argument("need at least 3 qubits");
    return std::sqrt(1.0 + 4.0 * (N - 1.0) / N) - 1.0;
}

double r_n(int N) {
    if (N < 2) throw std::invalid_argument("need at least 2 qubits");
    return ghz_family_et(0.5, N);
}

double wghz_superposition_et(double s) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("s must be in [0,1]");
    double norm2 = 4.0 * s * s + 6.0 * s * (1.0 - s) + (11.0 / 3.0) * (1.0 - s) * (1.0 - s);
    return std::sqrt(norm2) - 1.0;
}

double heisenberg_et(int N, int s) {
    if (s < 0 || s > N) throw std::invalid_argument("excitation count out of range");
    if (N % 2 != 0) return e_t(heisenberg_state(N, s)).eT;
    // ||T||^2 as a sum over the even counts x of sigma_x and y of sigma_y
    // factors; the remaining N-x-y slots carry sigma_z or identity.
    double cns = binom(N, s);
    double norm2 = 0.0;
    for (int x = 0; x <= N; x += 2)
        for (int y = 0; x + y <= N; y += 2) {
            int m = (x + y) / 2;
            double inner = poly_coeff(x, y, m) * binom(N - x - y, s - m);
            norm2 += inner * inner * binom(N, x) * binom(N - x, y);
        }
    norm2 /= cns * cns;
    return std::sqrt(norm2) - 1.0;
}

Vec ghz_state(int N, double p) {
    if (N < 2) throw std::invalid_argument("need at least 2 qubits");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
    Vec psi = Vec::Zero(1L << N);
    psi(0) = std::sqrt(p);
    psi(psi.size() - 1) = std::sqrt(1.0 - p);
    return psi;
}

Vec w_state(int N) {
    if (N < 2) throw std::invalid_argument("need at least 2 qubits");
    Vec psi = Vec::Zero(1L << N);
    for (int k = 0; k < N; ++k) psi(1L << k) = 1.0 / std::sqrt(static_cast<double>(N));
    return psi;
}

Vec w_tilde_state(int N) {
    Vec w = w_state(N);
    Vec psi = Vec::Zero(w.size());
    for (long i = 0; i < w.size(); ++i) psi(w.size() - 1 - i) = w(i);
    return psi;
}

Vec bell_state() { return ghz_state(2, 0.5); }

Vec wghz_state(double s, double phi) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("s must be in [0,1]");
    Vec psi = std::sqrt(s) * ghz_state(3, 0.5) +
              std::sqrt(1.0 - s) * std::polar(1.0, phi) * w_state(3);
    return psi / psi.norm();
}

Vec w_wtilde_state(int N, double s, double phi) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("s must be in [0,1]");
    Vec psi = std::sqrt(s) * w_state(N) +
              std::sqrt(1.0 - s) * std::polar(1.0, phi) * w_tilde_state(N);
    return psi / psi.norm();
}

Vec heisenberg_state(int N, int s) {
    if (N < 1) throw std::invalid_argument("need at least 1 qubit");
    if (s < 0 || s > N) throw std::invalid_argument("excitation count out of range");
    Vec psi = Vec::Zero(1L << N);
    long count = 0;
    for (long b = 0; b < psi.size(); ++b)
        if (__builtin_popcountl(b) == s) {
            psi(b) = 1.0;
            ++count;
        }
    return psi / std::sqrt(static_cast<double>(count));
}

Vec basis_state(const Dims& dims, const std::vector<int>& digits) {
    if (digits.size() != dims.size()) throw std::invalid_argument("digit count mismatch");
    long off = 0;
    for (size_t k = 0; k < dims.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= dims[k]) throw std::invalid_argument("digit out of range");
        off = off * dims[k] + digits[k];
    }
    Vec psi = Vec::Zero(total_dim(dims));
    psi(off) = 1.0;
    return psi;
}

}  // namespace qent
