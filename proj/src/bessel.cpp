#include "qbt/bessel.hpp"

#include <cmath>
#include <vector>

#include "qbt/quadrature.hpp"

namespace qbt {

namespace {

constexpr double series_switch_x = 12.0;

void check_range(int k, double x) {
    if (k < 0 || k > 512) throw Error("bessel: order out of range [0, 512]");
    if (!(x >= 1e-6 && x <= 200.0)) throw Error("bessel: argument out of range [1e-6, 200]");
}

// Ascending series, summed relative to its largest term so the partial sums
// never overflow: I_k(x) = sum_j (x/2)^{2j+k} / (j! (j+k)!).
Scaled i_series(int k, double x) {
    const double lh = std::log(0.5 * x);
    // peak index of t_j
    const double q = 0.25 * x * x;
    int jpeak = static_cast<int>(std::max(0.0, 0.5 * (-(k + 1) + std::sqrt(double(k + 1) * (k + 1) + x * x))));
    const double log_tpeak = (2.0 * jpeak + k) * lh - std::lgamma(jpeak + 1.0) - std::lgamma(jpeak + k + 1.0);
    double sum = 0.0;
    // upward from the peak
    double t = 1.0;
    for (int j = jpeak;; ++j) {
        sum += t;
        const double r = q / (double(j + 1) * double(j + 1 + k));
        t *= r;
        if (t < 1e-18 * sum) break;
        if (j > jpeak + 100000) throw Error("bessel: series failed to converge");
    }
    // downward from the peak
    t = 1.0;
    for (int j = jpeak; j > 0; --j) {
        const double r = double(j) * double(j + k) / q;
        t *= r;
        sum += t;
        if (t < 1e-18 * sum) break;
    }
    Scaled s{sum, log_tpeak};
    s.normalize();
    return s;
}

// Normalized downward recurrence anchored at e^x = I_0 + 2 sum_{j>=1} I_j.
Scaled i_miller(int k, double x) {
    const int extra = static_cast<int>(std::ceil(std::sqrt(40.0 * std::max(k, 1)))) + 20;
    int top = std::max(k, static_cast<int>(x)) + extra;
    std::vector<double> t(top + 2, 0.0);
    t[top + 1] = 0.0;
    t[top] = 1e-280;
    double norm = 0.0;  // accumulates I_0 + 2 sum I_j in units of the trial solution
    double rescale_log = 0.0;
    for (int j = top; j >= 1; --j) {
        t[j - 1] = t[j + 1] + (2.0 * j / x) * t[j];
        if (std::abs(t[j - 1]) > 1e280) {
            const double f = 1e-280;
            for (int i = j - 1; i <= top + 1 && i < static_cast<int>(t.size()); ++i) t[i] *= f;
            norm *= f;
            rescale_log += std::log(1.0 / f);
        }
        norm += 2.0 * t[j];
    }
    norm += t[0];
    // I_k = t[k] / norm * e^x
    Scaled s{t[k] / norm, x};
    (void)rescale_log;  // cancels in the ratio
    s.normalize();
    return s;
}

// K_0, K_1 by the integral representation, returned as (value, e^{-x} offset):
// e^{x} K_n(x) = int_0^tmax exp(-x (cosh t - 1)) cosh(n t) dt.
void k_seeds(double x, Scaled& k0, Scaled& k1) {
    const double tmax = std::acosh(1.0 + 45.0 / x);
    const QuadratureRule rule = composite_gauss(0.0, tmax, 48, 24);
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        const double ch = std::cosh(t);
        const double w = rule.weights[i] * std::exp(-x * (ch - 1.0));
        s0 += w;
        s1 += w * ch;
    }
    k0 = Scaled{s0, -x};
    k1 = Scaled{s1, -x};
    k0.normalize();
    k1.normalize();
}

} // namespace

Scaled bessel_i_scaled(int k, double x) {
    check_range(k, x);
    if (x <= series_switch_x) return i_series(k, x);
    return i_miller(k, x);
}

Scaled bessel_k_scaled(int k, double x) {
    check_range(k, x);
    Scaled k0, k1;
    k_seeds(x, k0, k1);
    if (k == 0) return k0;
    if (k == 1) return k1;
    Scaled prev = k0, cur = k1;
    for (int j = 1; j < k; ++j) {
        Scaled next = prev + cur * (2.0 * j / x);
        prev = cur;
        cur = next;
    }
    return cur;
}

BesselIK bessel_ik(int k, double x) {
    check_range(k, x);
    BesselIK out;
    const Scaled ikm1 = (k >= 1) ? bessel_i_scaled(k - 1, x) : bessel_i_scaled(1, x);
    const Scaled ik = bessel_i_scaled(k, x);
    const Scaled ikp1 = bessel_i_scaled(k + 1, x);
    out.i = ik;
    out.ip = (k == 0) ? bessel_i_scaled(1, x) : (ikm1 + ikp1) * 0.5;

    Scaled k0, k1;
    k_seeds(x, k0, k1);
    Scaled kkm1 = k0, kk = k1;
    if (k == 0) {
        out.k = k0;
        out.kp = k1 * (-1.0);
        return out;
    }
    for (int j = 1; j < k; ++j) {
        Scaled next = kkm1 + kk * (2.0 * j / x);
        kkm1 = kk;
        kk = next;
    }
    // here kk = K_k, kkm1 = K_{k-1}
    Scaled kkp1 = kkm1 + kk * (2.0 * k / x);
    out.k = kk;
    out.kp = (kkm1 + kkp1) * (-0.5);
    return out;
}

double bessel_i(int k, double x) { return bessel_i_scaled(k, x).value(); }

double bessel_i_prime(int k, double x) {
    if (k == 0) return bessel_i(1, x);
    return 0.5 * (bessel_i(k - 1, x) + bessel_i(k + 1, x));
}

double bessel_k(int k, double x) { return bessel_k_scaled(k, x).value(); }

double bessel_k_prime(int k, double x) {
    if (k == 0) return -bessel_k(1, x);
    return -0.5 * (bessel_k(k - 1, x) + bessel_k(k + 1, x));
}

} // namespace qbt
