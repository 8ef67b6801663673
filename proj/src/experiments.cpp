#include "qent/experiments.hpp"

#include "qent/measures.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qent {

Mat noisy_state(const Vec& psi, double p, const Dims& dims) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
    long d = total_dim(dims);
    if (psi.size() != d) throw std::invalid_argument("state size does not match dims");
    return (1.0 - p) / d * Mat::Identity(d, d) + p * dm(psi);
}

Mat reduced_w_noisy(int N, int n, double p) {
    if (n < 1 || n >= N) throw std::invalid_argument("need 1 <= n < N");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
    int m = N - n;
    long d = 1L << m;
    Vec w = w_state(m);
    Vec ground = Vec::Zero(d);
    ground(0) = 1.0;
    double fw = static_cast<double>(m) / N;
    return (1.0 - p) / d * Mat::Identity(d, d) + p * (fw * dm(w) + (1.0 - fw) * dm(ground));
}

ThresholdScan threshold_bisect(const std::string& family,
                               const std::function<double(double)>& witness, double bound) {
    ThresholdScan scan;
    scan.family = family;
    scan.bound = bound;
    const int samples = 21;
    for (int i = 0; i < samples; ++i) {
        double p = static_cast<double>(i) / (samples - 1);
        scan.curve.emplace_back(p, witness(p));
    }
    for (int i = 1; i < samples; ++i)
        if (scan.curve[i].second < scan.curve[i - 1].second - 1e-9)
            throw std::runtime_error("witness is not monotone in p for family " + family);

    double lo = std::numeric_limits<double>::quiet_NaN();
    double hi = lo;
    for (int i = 1; i < samples; ++i)
        if (scan.curve[i - 1].second <= bound && scan.curve[i].second > bound) {
            lo = scan.curve[i - 1].first;
            hi = scan.curve[i].first;
            break;
        }
    if (std::isnan(lo)) {
        scan.outcome = scan.curve.front().second > bound ? "always" : "never";
        scan.pStar = std::numeric_limits<double>::quiet_NaN();
        return scan;
    }
    while (hi - lo > 1e-6 && scan.iterations < 60) {
        double mid = 0.5 * (lo + hi);
        (witness(mid) > bound ? hi : lo) = mid;
        ++scan.iterations;
    }
    scan.pStar = 0.5 * (lo + hi);
    scan.outcome = "crossed";
    return scan;
}

Mat smolin_state() {
    Vec plus = bell_state();                 // (|00> + |11>)/sqrt(2)
    Vec minus = Vec::Zero(4);
    minus(0) = 1.0 / std::sqrt(2.0);
    minus(3) = -1.0 / std::sqrt(2.0);
    Vec psip = Vec::Zero(4);
    psip(1) = psip(2) = 1.0 / std::sqrt(2.0);
    Vec psim = Vec::Zero(4);
    psim(1) = 1.0 / std::sqrt(2.0);
    psim(2) = -1.0 / std::sqrt(2.0);
    Mat rho = Mat::Zero(16, 16);
    for (const Vec& b : {plus, minus, psip, psim}) rho += 0.25 * kron(dm(b), dm(b));
    return rho;
}

Mat dur_state() {
    int N = 4;
    long d = 1L << N;
    Vec ghz = ghz_state(N, 0.5);
    Mat rho = dm(ghz) / 5.0;
    for (int i = 0; i < N; ++i) {
        long e = 1L << (N - 1 - i);  // qubit i excited
        Mat p = Mat::Zero(d, d);
        p(e, e) = 1.0;
        Mat pbar = Mat::Zero(d, d);
        pbar(d - 1 - e, d - 1 - e) = 1.0;
        rho += (p + pbar) / 10.0;
    }
    return rho;
}

std::vector<GroverPoint> grover_trace(int N, const std::string& target_bits) {
    if (N < 1 || N > 16) throw std::invalid_argument("qubit count out of range");
    if (static_cast<int>(target_bits.size()) != N)
        throw std::invalid_argument("target length does not match qubit count");
    long target = 0;
    for (char c : target_bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("target must be a bitstring");
        target = target * 2 + (c - '0');
    }
    long d = 1L << N;
    Vec psi = Vec::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));

    auto hadamard_all = [&](Vec v) {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (int q = 0; q < N; ++q) {
            long bit = 1L << q;
            for (long i = 0; i < d; ++i) {
                if (i & bit) continue;
                cdouble a = v(i), b = v(i | bit);
                v(i) = inv_sqrt2 * (a + b);
                v(i | bit) = inv_sqrt2 * (a - b);
            }
        }
        return v;
    };

    int steps = static_cast<int>(std::ceil(M_PI / 4.0 * std::sqrt(static_cast<double>(d)))) + 2;
    std::vector<GroverPoint> out;
    for (int k = 0;; ++k) {
        GroverPoint pt;
        pt.iteration = k;
        pt.probability = std::norm(psi(target));
        pt.eT = e_t(psi).eT;
        out.push_back(pt);
        if (k == steps) break;
        psi(target) = -psi(target);  // oracle
        psi = hadamard_all(psi);
        psi(0) = -psi(0);  // zero-state phase flip
        psi = hadamard_all(psi);
    }
    return out;
}

std::string scan_emit(const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream os;
    os << "x,value\n";
    os.precision(10);
    for (const auto& [x, v] : rows) os << x << ',' << v << '\n';
    return os.str();
}

}  // namespace qent
