#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbt/bessel.hpp"
#include "qbt/ode.hpp"

using namespace qbt;

namespace {

// Short ascending series in plain doubles; oracle for moderate (k, x).
double i_series_plain(int k, double x) {
    double term = std::pow(0.5 * x, k) / std::tgamma(k + 1.0);
    double sum = term;
    for (int j = 1; j < 200; ++j) {
        term *= 0.25 * x * x / (j * (j + double(k)));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

} // namespace

TEST_CASE("I: power-series oracle values") {
    CHECK(bessel_i(0, 1.0) == doctest::Approx(i_series_plain(0, 1.0)).epsilon(1e-12));
    CHECK(bessel_i(0, 1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-12));
    // I0'(x) = I1(x)
    CHECK(bessel_i_prime(0, 1.0) == doctest::Approx(0.5651591039924851).epsilon(1e-12));
    for (int k : {0, 1, 2, 5, 11})
        for (double x : {0.25, 1.0, 3.0, 9.0})
            CHECK(bessel_i(k, x) == doctest::Approx(i_series_plain(k, x)).epsilon(1e-12));
}

TEST_CASE("Wronskian identity I_k K_k' - I_k' K_k = -1/x") {
    // spec anchor: k = 3, x = 2 gives exactly -0.5
    const double w = bessel_i(3, 2.0) * bessel_k_prime(3, 2.0) -
                     bessel_i_prime(3, 2.0) * bessel_k(3, 2.0);
    CHECK(w == doctest::Approx(-0.5).epsilon(1e-11));

    for (int k : {0, 1, 2, 7, 25, 60}) {
        for (double x : {0.05, 0.7, 2.0, 14.0, 55.0, 130.0}) {
            BesselIK b = bessel_ik(k, x);
            const Scaled lhs = b.i * b.kp - b.ip * b.k;
            CHECK(lhs.value() == doctest::Approx(-1.0 / x).epsilon(1e-10));
        }
    }
}

TEST_CASE("series/recurrence vs ODE integration over the supported range") {
    // the log-derivative of the regular branch is I_k'(s)/I_k(s) * s-free form:
    // v(r) = d/dr log I_k(s r) at r = 1 equals s I_k'(s)/I_k(s)
    for (int k : {0, 1, 4, 8}) {
        for (double s : {0.5, 1.0, 2.0, 6.0}) {
            RadialData in = radial_interior(k, s, 1.0, 6000);
            BesselIK b = bessel_ik(k, s);
            const double ratio = s * scaled_ratio(b.ip, b.i);
            CHECK(in.logderiv == doctest::Approx(ratio).epsilon(1e-8));

            RadialData ex = radial_exterior(k, s, 1.0, 12000);
            const double ratio_k = s * scaled_ratio(b.kp, b.k);
            CHECK(ex.logderiv == doctest::Approx(ratio_k).epsilon(1e-8));
        }
    }
}

TEST_CASE("scaled representation survives extreme orders") {
    // K_512 at tiny argument and I_512 at small argument: representable only
    // with the exponent offset.
    Scaled k512 = bessel_k_scaled(512, 1e-3);
    Scaled i512 = bessel_i_scaled(512, 1e-3);
    CHECK(std::isfinite(k512.mant));
    CHECK(std::isfinite(i512.mant));
    CHECK(k512.log_abs() > 5000.0);
    CHECK(i512.log_abs() < -5000.0);
    // the product I_k K_k ~ 1/(2k) stays moderate
    const double prod = (i512 * k512).value();
    CHECK(prod == doctest::Approx(1.0 / 1024.0).epsilon(1e-2));
}

TEST_CASE("closed-form integral bracket matches quadrature-free identity") {
    // int_0^s x I_k(x)^2 dx = [(s^2+k^2) I_k(s)^2 - s^2 I_k'(s)^2] / 2
    // checked against direct series integration at small order
    const double s = 1.0;
    double direct = 0.0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        const double x0 = s * i / n, x1 = s * (i + 1) / n, xm = 0.5 * (x0 + x1);
        auto f = [](double x) { return x < 1e-6 ? 0.0 : x * std::pow(bessel_i(2, x), 2); };
        direct += (x1 - x0) / 6.0 * (f(x0) + 4.0 * f(xm) + f(x1));
    }
    BesselIK b = bessel_ik(2, s);
    const double bracket =
        0.5 * ((s * s + 4.0) * std::pow(b.i.value(), 2) - s * s * std::pow(b.ip.value(), 2));
    CHECK(direct == doctest::Approx(bracket).epsilon(1e-9));
}

TEST_CASE("rejects out-of-range input") {
    CHECK_THROWS_AS(bessel_i(-1, 1.0), Error);
    CHECK_THROWS_AS(bessel_i(513, 1.0), Error);
    CHECK_THROWS_AS(bessel_i(0, 0.0), Error);
    CHECK_THROWS_AS(bessel_i(0, 201.0), Error);
}
