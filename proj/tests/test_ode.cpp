#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbt/ode.hpp"

using namespace qbt;

namespace {

BvpProblem neumann_cosh_problem() {
    // f'' = f, f'(0) = -1, f'(1) = 0  =>  f = cosh(1-x)/sinh(1), f(0) = coth(1)
    BvpProblem pb;
    pb.p = [](double) { return 0.0; };
    pb.q = [](double) { return 1.0; };
    pb.g = [](double) { return 0.0; };
    pb.xa = 0.0; pb.xb = 1.0;
    pb.a0 = 0.0; pb.b0 = 1.0; pb.c0 = -1.0;
    pb.a1 = 0.0; pb.b1 = 1.0; pb.c1 = 0.0;
    return pb;
}

} // namespace

TEST_CASE("shooting solve reproduces coth(1) at the left end") {
    BvpSolution sol = ode_solve_bvp(neumann_cosh_problem(), 400);
    CHECK(sol.u.front() == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-10));
    CHECK(sol.u.back() == doctest::Approx(1.0 / std::sinh(1.0)).epsilon(1e-10));
}

TEST_CASE("zero data gives the zero solution") {
    BvpProblem pb = neumann_cosh_problem();
    pb.c0 = 0.0;
    BvpSolution sol = ode_solve_bvp(pb, 100);
    for (double v : sol.u) CHECK(std::abs(v) <= 1e-14);
}

TEST_CASE("grid halving shows 4th order (Richardson ratio ~ 16)") {
    const double exact = 1.0 / std::tanh(1.0);
    const double e1 = std::abs(ode_solve_bvp(neumann_cosh_problem(), 10).u.front() - exact);
    const double e2 = std::abs(ode_solve_bvp(neumann_cosh_problem(), 20).u.front() - exact);
    const double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("Dirichlet/Robin boundary conditions") {
    // f'' = -pi^2 f would be resonant with Dirichlet on [0,1]; use f'' = 4 f,
    // f(0) = 1, f(1) = 0 => f = sinh(2(1-x))/sinh(2)
    BvpProblem pb;
    pb.p = [](double) { return 0.0; };
    pb.q = [](double) { return 4.0; };
    pb.g = [](double) { return 0.0; };
    pb.a0 = 1.0; pb.b0 = 0.0; pb.c0 = 1.0;
    pb.a1 = 1.0; pb.b1 = 0.0; pb.c1 = 0.0;
    BvpSolution sol = ode_solve_bvp(pb, 200);
    const double mid = std::sinh(1.0) / std::sinh(2.0);
    CHECK(sol.u[100] == doctest::Approx(mid).epsilon(1e-9));
}

TEST_CASE("radial interior data matches the k=0 closed form") {
    // for k = 0, s = 1: v(1) = I1(1)/I0(1)
    RadialData d = radial_interior(0, 1.0, 1.0, 4000);
    CHECK(d.logderiv == doctest::Approx(0.5651591039924851 / 1.2660658777520084).epsilon(1e-9));
}
