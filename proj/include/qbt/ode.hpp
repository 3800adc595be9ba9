#ifndef QBT_ODE_HPP
#define QBT_ODE_HPP

#include <functional>
#include <vector>

#include "qbt/types.hpp"

namespace qbt {

/// Linear two-point boundary value problem
///     u'' = p(x) u' + q(x) u + g(x)   on [xa, xb],
///     a0 u(xa) + b0 u'(xa) = c0,      a1 u(xb) + b1 u'(xb) = c1,
/// solved by shooting with classical RK4 on the given uniform grid
/// (global accuracy O(h^4), verified by Richardson halving in the tests).
struct BvpProblem {
    std::function<double(double)> p, q, g;
    double xa = 0.0, xb = 1.0;
    double a0 = 1.0, b0 = 0.0, c0 = 0.0;
    double a1 = 1.0, b1 = 0.0, c1 = 0.0;
};

struct BvpSolution {
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> du;
};

BvpSolution ode_solve_bvp(const BvpProblem& problem, int n_steps);

/// Radial data for one Fourier mode of -Laplace + s^2 on an annulus or disk:
/// the regular solution's logarithmic derivative v(r) = u'(r)/u(r) and the
/// trace-normalized squared norm n(r) = int u^2 t dt / u(r)^2, both propagated
/// by RK4 on the Riccati system.  This path never touches the Bessel code and
/// serves as its independent cross-check.
struct RadialData {
    double logderiv;   // v at the evaluation radius
    double norm_ratio; // n (interior) or w (exterior) at the evaluation radius
};

/// Regular-at-zero branch on (0, r_end]; starts at r0 with the leading
/// power-law behaviour u ~ r^k (two-term correction included).
RadialData radial_interior(int k, double s, double r_end, int n_steps,
                           double r0 = 1e-3);

/// Decaying-at-infinity branch on [r_end, inf); integrates inward from
/// r_far where the crude asymptotic v = -s is attracting, so the start
/// error dies like exp(-2 s (r_far - r_end)).
RadialData radial_exterior(int k, double s, double r_end, int n_steps,
                           double r_far = 0.0 /* 0: choose automatically */);

} // namespace qbt

#endif
