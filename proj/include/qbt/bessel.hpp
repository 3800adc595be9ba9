#ifndef QBT_BESSEL_HPP
#define QBT_BESSEL_HPP

#include <cmath>

#include "qbt/types.hpp"

namespace qbt {

/// Number held as mant * exp(log_off), so quantities like K_512(1e-6) or
/// I_k(x) e^{x} stay representable.  Products and ratios of scaled values are
/// exact in the exponent; only the mantissa rounds.
struct Scaled {
    double mant = 0.0;
    double log_off = 0.0;

    static Scaled of(double v) { return Scaled{v, 0.0}; }

    void normalize() {
        if (mant == 0.0) { log_off = 0.0; return; }
        const double a = std::abs(mant);
        if (a > 1e100 || a < 1e-100) {
            const double l = std::log(a);
            mant /= std::exp(l);
            log_off += l;
        }
    }
    double value() const { return mant * std::exp(log_off); }
    double log_abs() const { return std::log(std::abs(mant)) + log_off; }
    int sign() const { return (mant > 0) - (mant < 0); }

    Scaled operator*(const Scaled& o) const {
        Scaled r{mant * o.mant, log_off + o.log_off};
        r.normalize();
        return r;
    }
    Scaled operator/(const Scaled& o) const {
        Scaled r{mant / o.mant, log_off - o.log_off};
        r.normalize();
        return r;
    }
    Scaled operator*(double c) const {
        Scaled r{mant * c, log_off};
        r.normalize();
        return r;
    }
    Scaled operator+(const Scaled& o) const {
        if (mant == 0.0) return o;
        if (o.mant == 0.0) return *this;
        // align to the larger offset
        if (log_off >= o.log_off) {
            Scaled r{mant + o.mant * std::exp(o.log_off - log_off), log_off};
            r.normalize();
            return r;
        }
        Scaled r{o.mant + mant * std::exp(log_off - o.log_off), o.log_off};
        r.normalize();
        return r;
    }
    Scaled operator-(const Scaled& o) const { return *this + o * (-1.0); }
};

/// Ratio a/b as a plain double (finite whenever the true ratio is).
inline double scaled_ratio(const Scaled& a, const Scaled& b) {
    return (a / b).value();
}

/// Modified Bessel functions of integer order with derivatives,
/// in scaled representation.  Supported range: 0 <= k <= 512, 1e-6 <= x <= 200.
///
/// Method: ascending series for x <= 12 (switch point), normalized downward
/// (Miller) recurrence against e^x for x > 12; K_0 and K_1 from the integral
/// representation K_n(x) = int_0^inf exp(-x cosh t) cosh(nt) dt, higher orders
/// by upward recurrence, cross-checked by the Wronskian
/// I_k(x) K_k'(x) - I_k'(x) K_k(x) = -1/x.
struct BesselIK {
    Scaled i, ip;   // I_k(x), I_k'(x)
    Scaled k, kp;   // K_k(x), K_k'(x)
};

Scaled bessel_i_scaled(int k, double x);
Scaled bessel_k_scaled(int k, double x);
BesselIK bessel_ik(int k, double x);

/// Plain values; may overflow/underflow outside the comfortable range.
double bessel_i(int k, double x);
double bessel_i_prime(int k, double x);
double bessel_k(int k, double x);
double bessel_k_prime(int k, double x);

} // namespace qbt

#endif
