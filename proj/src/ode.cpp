#include "qbt/ode.hpp"

#include <array>
#include <cmath>

namespace qbt {

namespace {

// RK4 step for a fixed-size first-order system.
template <std::size_t N>
void rk4_step(double x, double h, std::array<double, N>& u,
              const std::function<void(double, const std::array<double, N>&,
                                       std::array<double, N>&)>& f) {
    std::array<double, N> k1, k2, k3, k4, t;
    f(x, u, k1);
    for (std::size_t i = 0; i < N; ++i) t[i] = u[i] + 0.5 * h * k1[i];
    f(x + 0.5 * h, t, k2);
    for (std::size_t i = 0; i < N; ++i) t[i] = u[i] + 0.5 * h * k2[i];
    f(x + 0.5 * h, t, k3);
    for (std::size_t i = 0; i < N; ++i) t[i] = u[i] + h * k3[i];
    f(x + h, t, k4);
    for (std::size_t i = 0; i < N; ++i)
        u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

} // namespace

BvpSolution ode_solve_bvp(const BvpProblem& pb, int n_steps) {
    if (n_steps < 2) throw Error("ode_solve_bvp: need at least 2 steps");
    if (!(pb.xb > pb.xa)) throw Error("ode_solve_bvp: bad interval");
    if (pb.a0 == 0.0 && pb.b0 == 0.0) throw Error("ode_solve_bvp: degenerate left BC");
    if (pb.a1 == 0.0 && pb.b1 == 0.0) throw Error("ode_solve_bvp: degenerate right BC");

    const double h = (pb.xb - pb.xa) / n_steps;
    using State = std::array<double, 4>;  // particular (u, u') and homogeneous (w, w')
    const std::function<void(double, const State&, State&)> rhs =
        [&pb](double x, const State& u, State& du) {
            du[0] = u[1];
            du[1] = pb.p(x) * u[1] + pb.q(x) * u[0] + pb.g(x);
            du[2] = u[3];
            du[3] = pb.p(x) * u[3] + pb.q(x) * u[2];
        };

    State u;
    if (pb.b0 != 0.0) { u[0] = 0.0; u[1] = pb.c0 / pb.b0; }
    else              { u[0] = pb.c0 / pb.a0; u[1] = 0.0; }
    u[2] = -pb.b0;
    u[3] = pb.a0;

    BvpSolution sol;
    sol.x.resize(n_steps + 1);
    std::vector<State> states(n_steps + 1);
    states[0] = u;
    sol.x[0] = pb.xa;
    for (int i = 0; i < n_steps; ++i) {
        rk4_step<4>(pb.xa + i * h, h, u, rhs);
        states[i + 1] = u;
        sol.x[i + 1] = pb.xa + (i + 1) * h;
    }

    const double denom = pb.a1 * u[2] + pb.b1 * u[3];
    if (std::abs(denom) < 1e-14 * (std::abs(pb.a1 * u[0]) + std::abs(pb.b1 * u[1]) + 1.0))
        throw Error("ode_solve_bvp: boundary value problem is (near-)resonant");
    const double sigma = (pb.c1 - pb.a1 * u[0] - pb.b1 * u[1]) / denom;

    sol.u.resize(n_steps + 1);
    sol.du.resize(n_steps + 1);
    for (int i = 0; i <= n_steps; ++i) {
        sol.u[i] = states[i][0] + sigma * states[i][2];
        sol.du[i] = states[i][1] + sigma * states[i][3];
    }
    return sol;
}

RadialData radial_interior(int k, double s, double r_end, int n_steps, double r0) {
    if (!(r_end > r0) || n_steps < 8) throw Error("radial_interior: bad parameters");
    const double s2 = s * s;
    // v' = -v/r - v^2 + k^2/r^2 + s^2,  n' = r - 2 v n
    const std::function<void(double, const std::array<double, 2>&, std::array<double, 2>&)>
        rhs = [k, s2](double r, const std::array<double, 2>& u, std::array<double, 2>& du) {
            const double v = u[0], n = u[1];
            du[0] = -v / r - v * v + double(k) * k / (r * r) + s2;
            du[1] = r - 2.0 * v * n;
        };
    // u ~ r^k (1 + (s r)^2 / (4(k+1))) near zero
    const double corr = s2 * r0 * r0 / (4.0 * (k + 1));
    std::array<double, 2> u;
    u[0] = k / r0 + (s2 * r0 / (2.0 * (k + 1))) / (1.0 + corr);
    u[1] = r0 * r0 / (2.0 * k + 2.0);
    const double h = (r_end - r0) / n_steps;
    for (int i = 0; i < n_steps; ++i) rk4_step<2>(r0 + i * h, h, u, rhs);
    return {u[0], u[1]};
}

RadialData radial_exterior(int k, double s, double r_end, int n_steps, double r_far) {
    if (r_far <= 0.0) r_far = r_end + 40.0 / s + 0.05 * k / s;
    if (!(r_far > r_end) || n_steps < 8) throw Error("radial_exterior: bad parameters");
    const double s2 = s * s;
    const std::function<void(double, const std::array<double, 2>&, std::array<double, 2>&)>
        rhs = [k, s2](double r, const std::array<double, 2>& u, std::array<double, 2>& du) {
            const double v = u[0], w = u[1];
            du[0] = -v / r - v * v + double(k) * k / (r * r) + s2;
            du[1] = -r - 2.0 * v * w;
        };
    std::array<double, 2> u;
    u[0] = -s;                      // crude: corrected by inward contraction
    u[1] = r_far / (2.0 * s);
    const double h = -(r_far - r_end) / n_steps;
    for (int i = 0; i < n_steps; ++i) rk4_step<2>(r_far + i * h, h, u, rhs);
    return {u[0], u[1]};
}

} // namespace qbt
