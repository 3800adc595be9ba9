#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbt/bessel.hpp"
#include "qbt/quadrature.hpp"

using namespace qbt;

TEST_CASE("rule invariants: weights sum to b-a, nodes increasing") {
    for (auto rule : {composite_gauss(0.0, 1.0, 8), composite_gauss(-2.0, 5.0, 13, 10),
                      graded_gauss_right(0.0, 1.0, 40, 0.7),
                      graded_gauss_left(1.0, 30.0, 40, 0.8)}) {
        CHECK_NOTHROW(rule.validate());
        double sum = 0.0;
        for (double w : rule.weights) sum += w;
        CHECK(sum == doctest::Approx(rule.b - rule.a).epsilon(1e-13));
    }
}

TEST_CASE("integrate_radial: monomials") {
    auto rule = composite_gauss(0.0, 1.0, 4);
    CHECK(integrate_radial([](double) { return 1.0; }, rule) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(integrate_radial([](double r) { return r * r; }, rule) ==
          doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("integrate_radial: I0(r)^2 against double-series oracle") {
    // int_0^1 I0(r)^2 r dr = sum_{i,j} (1/4)^{i+j} / ((i! j!)^2 (2i+2j+2))
    double oracle = 0.0;
    double fact[16];
    fact[0] = 1.0;
    for (int i = 1; i < 16; ++i) fact[i] = fact[i - 1] * i;
    for (int i = 0; i < 14; ++i)
        for (int j = 0; j < 14; ++j)
            oracle += std::pow(0.25, i + j) / (fact[i] * fact[i] * fact[j] * fact[j] * (2.0 * i + 2.0 * j + 2.0));
    auto rule = composite_gauss(0.0, 1.0, 8);
    const double got =
        integrate_radial([](double r) { return std::pow(bessel_i(0, std::max(r, 1e-6)), 2); }, rule);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("smooth integrand reaches 1e-10 relative") {
    auto rule = composite_gauss(0.0, 1.0, 8);
    const double got = integrate([](double x) { return std::exp(x); }, rule);
    CHECK(got == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("graded rule resolves a right-endpoint peak") {
    // int_0^1 r^41 dr = 1/42, integrand peaked at r = 1
    auto rule = graded_gauss_right(0.0, 1.0, 30, 0.6);
    const double got = integrate([](double r) { return std::pow(r, 41); }, rule);
    CHECK(got == doctest::Approx(1.0 / 42.0).epsilon(1e-12));
}
