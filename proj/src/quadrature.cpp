#include "qbt/quadrature.hpp"

#include <cmath>

namespace qbt {

void QuadratureRule::validate() const {
    if (nodes.size() != weights.size() || nodes.empty())
        throw Error("QuadratureRule: empty or mismatched nodes/weights");
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (weights[i] <= 0.0) throw Error("QuadratureRule: nonpositive weight");
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw Error("QuadratureRule: nodes not strictly increasing");
        sum += weights[i];
    }
    const double len = b - a;
    if (std::abs(sum - len) > 1e-12 * std::abs(len))
        throw Error("QuadratureRule: weights do not sum to b - a");
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1 || n > 64) throw Error("gauss_legendre: order out of range");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, Newton on P_n
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

namespace {

QuadratureRule from_panels(const std::vector<double>& edges, int points) {
    std::vector<double> xs, ws;
    gauss_legendre(points, xs, ws);
    QuadratureRule rule;
    rule.a = edges.front();
    rule.b = edges.back();
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < points; ++i) {
            rule.nodes.push_back(mid + half * xs[i]);
            rule.weights.push_back(half * ws[i]);
        }
    }
    rule.validate();
    return rule;
}

} // namespace

QuadratureRule composite_gauss(double a, double b, int panels, int points) {
    if (!(b > a) || panels < 1) throw Error("composite_gauss: bad interval");
    std::vector<double> edges(panels + 1);
    for (int p = 0; p <= panels; ++p) edges[p] = a + (b - a) * p / panels;
    return from_panels(edges, points);
}

QuadratureRule graded_gauss_right(double a, double b, int panels, double ratio,
                                  int points) {
    if (!(b > a) || panels < 1 || !(ratio > 0.0 && ratio < 1.0))
        throw Error("graded_gauss_right: bad parameters");
    // widths proportional to ratio^0, ..., ratio^{panels-1}, widest at `a`
    std::vector<double> w(panels);
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        w[p] = std::pow(ratio, p);
        sum += w[p];
    }
    std::vector<double> edges(panels + 1);
    edges[0] = a;
    for (int p = 0; p < panels; ++p) edges[p + 1] = edges[p] + (b - a) * w[p] / sum;
    edges[panels] = b;
    return from_panels(edges, points);
}

QuadratureRule graded_gauss_left(double a, double b, int panels, double ratio,
                                 int points) {
    if (!(b > a) || panels < 1 || !(ratio > 0.0 && ratio < 1.0))
        throw Error("graded_gauss_left: bad parameters");
    std::vector<double> w(panels);
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        w[p] = std::pow(ratio, panels - 1 - p);
        sum += w[p];
    }
    std::vector<double> edges(panels + 1);
    edges[0] = a;
    for (int p = 0; p < panels; ++p) edges[p + 1] = edges[p] + (b - a) * w[p] / sum;
    edges[panels] = b;
    return from_panels(edges, points);
}

double integrate(const std::function<double(double)>& f, const QuadratureRule& rule) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(rule.nodes[i]);
    return s;
}

cx integrate_cx(const std::function<cx(double)>& f, const QuadratureRule& rule) {
    cx s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(rule.nodes[i]);
    return s;
}

double integrate_radial(const std::function<double(double)>& f,
                        const QuadratureRule& rule) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * rule.nodes[i] * f(rule.nodes[i]);
    return s;
}

} // namespace qbt
