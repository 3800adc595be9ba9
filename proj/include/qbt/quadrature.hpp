#ifndef QBT_QUADRATURE_HPP
#define QBT_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "qbt/types.hpp"

namespace qbt {

/// Quadrature rule on [a, b]: strictly increasing nodes, positive weights,
/// weights summing to b - a (validated at construction).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0, b = 0.0;

    void validate() const;
};

/// n-point Gauss-Legendre nodes/weights on [-1, 1] (Newton on the Legendre
/// polynomial; n <= 64).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Composite Gauss-Legendre: `panels` equal panels of `points` nodes each.
QuadratureRule composite_gauss(double a, double b, int panels, int points = 16);

/// Composite Gauss-Legendre on panels geometrically graded towards `b`
/// (finest panel width ~ (b-a)*ratio^(panels-1)).  Used for integrands that
/// peak sharply at the right endpoint, e.g. r^(2k+1).
QuadratureRule graded_gauss_right(double a, double b, int panels, double ratio,
                                  int points = 16);

/// Same, graded towards `a`.
QuadratureRule graded_gauss_left(double a, double b, int panels, double ratio,
                                 int points = 16);

double integrate(const std::function<double(double)>& f, const QuadratureRule& rule);
cx integrate_cx(const std::function<cx(double)>& f, const QuadratureRule& rule);

/// Integral of f(r) against the radial measure r dr on [rule.a, rule.b].
double integrate_radial(const std::function<double(double)>& f,
                        const QuadratureRule& rule);

} // namespace qbt

#endif
