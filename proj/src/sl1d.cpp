#include "qbt/sl1d.hpp"

#include <cmath>

namespace qbt {
namespace sl1d {

void IntervalModel::validate() const {
    if (n_grid < 64) throw Error("IntervalModel: n_grid must be at least 64");
    if (!q.empty() && static_cast<int>(q.size()) != n_grid)
        throw Error("IntervalModel: potential sample count must match the grid");
    for (double v : q)
        if (!std::isfinite(v)) throw Error("IntervalModel: potential must be bounded");
}

DiscreteTriple build_triple(const IntervalModel& model) {
    model.validate();
    const int n = model.n_grid;
    const double h = model.spacing();

    std::vector<double> w(n, h);
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;

    Matrix k(n, n);
    for (int e = 0; e + 1 < n; ++e) {
        // edge stiffness h * (1/h)^2 between nodes e, e+1
        const double c = 1.0 / h;
        k(e, e) += c;
        k(e + 1, e + 1) += c;
        k(e, e + 1) -= c;
        k(e + 1, e) -= c;
    }
    if (!model.q.empty())
        for (int i = 0; i < n; ++i) k(i, i) += w[i] * model.q[i];

    Matrix g1(2, n);
    g1(0, 0) = 1.0;
    g1(1, n - 1) = 1.0;

    // one-sided second-order derivative rows with outward-normal signs
    Matrix g0(2, n);
    g0(0, 0) = 1.5 / h;  g0(0, 1) = -2.0 / h;  g0(0, 2) = 0.5 / h;          // -f'(0)
    g0(1, n - 1) = 1.5 / h; g0(1, n - 2) = -2.0 / h; g0(1, n - 3) = 0.5 / h; // +f'(1)

    return make_triple(std::move(k), std::move(w), Matrix::identity(2), std::move(g0),
                       std::move(g1), {0, n - 1},
                       "sl1d(n=" + std::to_string(n) + (model.q.empty() ? ",q=0)" : ")"));
}

Matrix weyl_exact(double lambda) {
    if (!(lambda < 0.0)) throw Error("weyl_exact: needs real lambda < 0");
    const double s = std::sqrt(-lambda);
    Matrix m(2, 2);
    const double c = 1.0 / (s * std::tanh(s));
    const double d = 1.0 / (s * std::sinh(s));
    m(0, 0) = c; m(1, 1) = c;
    m(0, 1) = d; m(1, 0) = d;
    return m;
}

RobinResult robin_realization(const IntervalModel& model, const Matrix& b,
                              double scan_min) {
    if (b.rows() != 2 || b.cols() != 2) throw Error("robin_realization: B must be 2x2");
    DiscreteTriple t = build_triple(model);
    BoundaryParameter theta = BoundaryParameter::from_inverse(b);

    RobinResult out;
    out.realization = realize(t, theta);
    out.eigenvalues = out.realization.eigenvalues_sym();

    // roots of det(Y - M(l) X) strictly below the A0 spectrum
    const double a0_min = a0_eigenvalues(t).front();
    const double hi = a0_min - 1e-6 * (1.0 + std::abs(a0_min));
    if (hi > scan_min)
        out.weyl_roots = eigenvalues_via_weyl(t, theta, scan_min, hi, 1e-10);
    return out;
}

TraceTargets trace_targets(double lambda) {
    if (!(lambda < 0.0)) throw Error("trace_targets: needs real lambda < 0");
    TraceTargets out;
    // Dirichlet and Neumann eigenvalues coincide at (j pi)^2, j >= 1; only the
    // extra Neumann eigenvalue 0 contributes to the resolvent-trace difference.
    out.dirichlet_vs_neumann = 1.0 / lambda;
    // oracle 1: the eigenvalue series; the (j pi)^2 terms cancel pairwise and
    // the extra Neumann eigenvalue 0 leaves -1/(0 - lambda)
    out.eigen_series_oracle = -1.0 / (0.0 - lambda);
    // oracle 2: tr(M'(l)(Theta - M(l))^{-1}) with Theta = 0 equals
    // -d/dl log det M(l); det M(l) = -1/l, so the value is 1/l.
    const double eps = 1e-6 * std::abs(lambda);
    auto logdet = [](double l) {
        const double s = std::sqrt(-l);
        const double c = 1.0 / (s * std::tanh(s));
        const double d = 1.0 / (s * std::sinh(s));
        return std::log(c * c - d * d);
    };
    out.logdet_oracle = -(logdet(lambda + eps) - logdet(lambda - eps)) / (2.0 * eps);
    return out;
}

DissipativeDemo dissipative_demo(const IntervalModel& model, const Matrix& b) {
    DiscreteTriple t = build_triple(model);
    BoundaryParameter theta = BoundaryParameter::from_inverse(b);
    DissipativeDemo out;
    out.dissipative = theta.dissipative(t.w_b);
    Realization r = realize(t, theta);
    out.eigenvalues = r.eigenvalues_general();
    out.min_imag = std::numeric_limits<double>::infinity();
    for (const cx& ev : out.eigenvalues) out.min_imag = std::min(out.min_imag, ev.imag());
    return out;
}

} // namespace sl1d
} // namespace qbt
