#ifndef QBT_SL1D_HPP
#define QBT_SL1D_HPP

#include <vector>

#include "qbt/triple.hpp"

namespace qbt {
namespace sl1d {

/// -f'' + q f on (0, 1) with conormal map Gamma0 f = (-f'(0), f'(1))
/// (outward normal at x = 0 is -d/dx) and trace map Gamma1 f = (f(0), f(1)).
struct IntervalModel {
    std::vector<double> q;   // samples on the grid; empty means q = 0
    int n_grid = 400;

    void validate() const;
    double spacing() const { return 1.0 / (n_grid - 1); }
};

/// First-difference stiffness plus lumped potential on a uniform grid; the
/// Green identity of the resulting triple is exact in exact arithmetic (the
/// central commitment of this module), and the A0 realization is the
/// variational Neumann operator.
DiscreteTriple build_triple(const IntervalModel& model);

/// Closed-form Weyl matrix for q = 0 and real lambda < 0:
/// with s = sqrt(-lambda),
///     M = (1/s) [[coth s, 1/sinh s], [1/sinh s, coth s]].
Matrix weyl_exact(double lambda);

struct RobinResult {
    Realization realization;
    std::vector<double> eigenvalues;        // from the realization pencil
    std::vector<double> weyl_roots;         // det(Y - M X) roots below min sigma(A0)
};

/// Theta = B^{-1}: boundary condition B (f|boundary) = conormal derivative.
/// The full 2x2 B covers nonlocal (end-to-end coupled) conditions.
RobinResult robin_realization(const IntervalModel& model, const Matrix& b,
                              double scan_min = -60.0);

struct TraceTargets {
    double dirichlet_vs_neumann;   // tr((A_D - l)^{-1} - (A_N - l)^{-1}) = 1/l for q=0
    double eigen_series_oracle;    // same value from the eigenvalue series
    double logdet_oracle;          // same value from d/dl log det M(l)
};

/// Exact trace-formula targets for q = 0 at real lambda < 0.
TraceTargets trace_targets(double lambda);

struct DissipativeDemo {
    std::vector<cx> eigenvalues;
    double min_imag = 0.0;
    bool dissipative = false;
};

/// Complex Robin parameter with Im B >= 0: all realization eigenvalues lie in
/// the closed upper half-plane.
DissipativeDemo dissipative_demo(const IntervalModel& model, const Matrix& b);

} // namespace sl1d
} // namespace qbt

#endif
