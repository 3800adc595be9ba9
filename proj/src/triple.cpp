#include "qbt/triple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbt/rng.hpp"

namespace qbt {

namespace {

Matrix apply_gram_left(const std::vector<double>& w, const Matrix& a) {
    Matrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) *= w[i];
    return r;
}

// K - lambda W
Matrix shifted_stiffness(const DiscreteTriple& t, cx lambda) {
    Matrix s = t.k_sym;
    for (int i = 0; i < t.n; ++i) s(i, i) -= lambda * t.w[i];
    return s;
}

Lu factor_shifted(const DiscreteTriple& t, cx lambda, const char* who) {
    Matrix s = shifted_stiffness(t, lambda);
    Lu f = lu_factor(s);
    const double cond = cond_1_estimate(s, f);
    if (!(cond < 1e12)) {
        double nearest = std::numeric_limits<double>::quiet_NaN();
        try {
            double best = std::numeric_limits<double>::infinity();
            for (double e : a0_eigenvalues(t)) {
                const double dist = std::abs(e - lambda);
                if (dist < best) { best = dist; nearest = e; }
            }
        } catch (const Error&) {}
        throw NearEigenvalueError(std::string(who) + " [" + t.label +
                                      "]: spectral point too close to the reference "
                                      "spectrum (cond " + std::to_string(cond) + ")",
                                  nearest);
    }
    return f;
}

} // namespace

Matrix DiscreteTriple::gram() const { return Matrix::diag(w); }

double DiscreteTriple::green_residual() const {
    Matrix wt = apply_gram_left(w, t_act);
    Matrix lhs = wt - adjoint(wt);
    Matrix rhs = mul(adjoint(g0), mul(w_b, g1)) - mul(adjoint(g1), mul(w_b, g0));
    return norm_max(lhs - rhs);
}

void DiscreteTriple::validate() const {
    const double tol_green = 1e-12 * (1.0 + norm_max(t_act));
    const double res = green_residual();
    if (res > tol_green)
        throw Error(label + ": Green identity residual " + std::to_string(res) +
                    " above tolerance");

    Matrix stacked = vcat(g0, g1);
    auto s = singular_values(stacked);
    if (s.size() < std::size_t(2 * m) || s[2 * m - 1] <= 1e-10 * s[0])
        throw Error(label + ": stacked boundary maps rank-deficient");

    // solvability of the constrained reference system at lambda = -1
    const int mb = static_cast<int>(boundary_nodes.size());
    if (mb == m) {
        Matrix sys(n, n);
        int r = 0;
        for (int i : interior_rows) {
            for (int j = 0; j < n; ++j)
                sys(r, j) = t_act(i, j) + ((i == j) ? cx(1.0) : cx(0.0));
            ++r;
        }
        for (int i = 0; i < m; ++i, ++r)
            for (int j = 0; j < n; ++j) sys(r, j) = g0(i, j);
        Lu f = lu_factor(sys);
        if (!(cond_1_estimate(sys, f) < 1e12))
            throw Error(label + ": constrained reference system not square-solvable");
    } else {
        // interface triples carry more boundary nodes than boundary dimensions;
        // the equivalent check is solvability of K + W itself
        Matrix sys = k_sym;
        for (int i = 0; i < n; ++i) sys(i, i) += w[i];
        Lu f = lu_factor(sys);
        if (!(cond_1_estimate(sys, f) < 1e12))
            throw Error(label + ": reference system not solvable at lambda = -1");
    }
}

DiscreteTriple make_triple(Matrix k_sym, std::vector<double> w, Matrix w_b, Matrix g0,
                           Matrix g1, std::vector<int> boundary_nodes, std::string label) {
    DiscreteTriple t;
    t.n = static_cast<int>(k_sym.rows());
    t.m = static_cast<int>(g0.rows());
    t.k_sym = hermitian_part(k_sym);
    t.w = std::move(w);
    t.w_b = std::move(w_b);
    t.g0 = std::move(g0);
    t.g1 = std::move(g1);
    t.boundary_nodes = std::move(boundary_nodes);
    t.label = std::move(label);
    for (double wi : t.w)
        if (!(wi > 0.0)) throw Error(t.label + ": Gram weights must be positive");
    std::vector<bool> is_b(t.n, false);
    for (int b : t.boundary_nodes) is_b.at(b) = true;
    for (int i = 0; i < t.n; ++i)
        if (!is_b[i]) t.interior_rows.push_back(i);
    Matrix rest = t.k_sym - mul(adjoint(t.g1), mul(t.w_b, t.g0));
    t.t_act = rest;
    for (int i = 0; i < t.n; ++i)
        for (int j = 0; j < t.n; ++j) t.t_act(i, j) /= t.w[i];
    return t;
}

DiscreteTriple make_triple_from_fields(Matrix t_act, std::vector<double> w, Matrix w_b,
                                       Matrix g0, Matrix g1,
                                       std::vector<int> boundary_nodes, std::string label) {
    DiscreteTriple t;
    t.n = static_cast<int>(t_act.rows());
    t.m = static_cast<int>(g0.rows());
    t.t_act = std::move(t_act);
    t.w = std::move(w);
    t.w_b = std::move(w_b);
    t.g0 = std::move(g0);
    t.g1 = std::move(g1);
    t.boundary_nodes = std::move(boundary_nodes);
    t.label = std::move(label);
    std::vector<bool> is_b(t.n, false);
    for (int b : t.boundary_nodes) is_b.at(b) = true;
    for (int i = 0; i < t.n; ++i)
        if (!is_b[i]) t.interior_rows.push_back(i);
    Matrix k = apply_gram_left(t.w, t.t_act) + mul(adjoint(t.g1), mul(t.w_b, t.g0));
    if (norm_max(k - adjoint(k)) > 1e-10 * (1.0 + norm_max(k)))
        throw Error(t.label + ": fields violate the Green identity");
    t.k_sym = hermitian_part(k);
    return t;
}

// ---------------------------------------------------------------------------
// BoundaryParameter

BoundaryParameter BoundaryParameter::from_operator(const Matrix& b) {
    BoundaryParameter p;
    p.x = Matrix::identity(b.rows());
    p.y = b;
    p.kind = RelationKind::operator_graph;
    return p;
}

BoundaryParameter BoundaryParameter::from_inverse(const Matrix& b) {
    BoundaryParameter p;
    p.x = b;
    p.y = Matrix::identity(b.rows());
    p.kind = RelationKind::inverse_operator;
    return p;
}

BoundaryParameter BoundaryParameter::pure_multivalued(int m) {
    BoundaryParameter p;
    p.x = Matrix(m, m);
    p.y = Matrix::identity(m);
    p.kind = RelationKind::pure_multivalued;
    return p;
}

BoundaryParameter BoundaryParameter::zero_operator(int m) {
    BoundaryParameter p;
    p.x = Matrix::identity(m);
    p.y = Matrix(m, m);
    p.kind = RelationKind::operator_graph;
    return p;
}

BoundaryParameter BoundaryParameter::general(Matrix x, Matrix y) {
    BoundaryParameter p;
    p.x = std::move(x);
    p.y = std::move(y);
    if (p.x.rows() != p.y.rows() || p.x.cols() != p.y.cols())
        throw Error("BoundaryParameter: X and Y must have equal shapes");
    p.kind = RelationKind::general;
    return p;
}

bool BoundaryParameter::faithful(double tol) const {
    if (d() == 0) return true;
    Matrix stacked = vcat(x, y);
    auto s = singular_values(stacked);
    return s[d() - 1] > tol * s[0];
}

bool BoundaryParameter::self_adjoint(const Matrix& w_b, double tol) const {
    if (d() != m()) return false;
    if (!faithful()) return false;
    Matrix sym = mul(adjoint(x), mul(w_b, y)) - mul(adjoint(y), mul(w_b, x));
    const double scale = std::max({norm_max(x), norm_max(y), 1e-30});
    return norm_max(sym) <= tol * scale * scale * std::max(norm_max(w_b), 1e-30);
}

bool BoundaryParameter::dissipative(const Matrix& w_b, double tol) const {
    Matrix form = skew_part(mul(adjoint(y), mul(w_b, x)));
    HermEig e = hermitian_eig(form);
    const double scale = std::max(norm_max(form), 1e-30);
    return e.values.empty() || e.values.front() >= -tol * scale - 1e-14;
}

bool BoundaryParameter::accumulative(const Matrix& w_b, double tol) const {
    Matrix form = skew_part(mul(adjoint(y), mul(w_b, x)));
    HermEig e = hermitian_eig(form);
    const double scale = std::max(norm_max(form), 1e-30);
    return e.values.empty() || e.values.back() <= tol * scale + 1e-14;
}

double BoundaryParameter::operator_part_gap(const Matrix& w_b) const {
    (void)w_b;
    // multivalued directions are X ker(...)-free: dom Theta = ran X; the
    // operator part maps X h to Y h for h orthogonal to ker X.  The reported
    // gap is min ||Y h|| / ||X h|| over that complement (0 notin sigma_ess
    // surrogate: gap > 0 or finite-dimensional kernel).
    Matrix kx = kernel_basis(x);
    if (static_cast<int>(kx.cols()) == d())
        return std::numeric_limits<double>::infinity();   // purely multivalued
    Matrix q = kernel_basis(adjoint(kx));   // complement of ker X
    Matrix xq = mul(x, q), yq = mul(y, q);
    auto sx = singular_values(xq);
    auto sy = singular_values(yq);
    if (sy.empty() || sx.empty() || sx.front() == 0.0) return 0.0;
    return sy.back() / sx.front();
}

// ---------------------------------------------------------------------------
// Engine ops

double green_residual(const DiscreteTriple& t) { return t.green_residual(); }

Matrix gamma_field(const DiscreteTriple& t, cx lambda) {
    Lu f = factor_shifted(t, lambda, "gamma_field");
    Matrix rhs = mul(adjoint(t.g1), t.w_b);   // N x m
    return f.solve(rhs);
}

WeylSample weyl(const DiscreteTriple& t, cx lambda) {
    WeylSample s;
    s.lambda = lambda;
    s.gamma = gamma_field(t, lambda);
    s.m_matrix = mul(t.g1, s.gamma);
    return s;
}

Matrix gamma_star(const DiscreteTriple& t, cx lambda) {
    // G1 (K - l W)^{-1} W via one adjoint solve:
    // (K - l W)* Z = G1*  =>  Z* W = G1 (K - l W)^{-1} W
    Lu f = factor_shifted(t, lambda, "gamma_star");
    Matrix rhs = adjoint(t.g1);               // N x m
    Matrix z = f.solve_adjoint(rhs);
    Matrix out(t.m, t.n);
    for (int i = 0; i < t.m; ++i)
        for (int j = 0; j < t.n; ++j) out(i, j) = std::conj(z(j, i)) * t.w[j];
    return out;
}

Matrix weyl_derivative(const DiscreteTriple& t, cx lambda) {
    if (t.m == 0) return Matrix(0, 0);
    return mul(gamma_star(t, lambda), gamma_field(t, lambda));
}

Matrix a0_resolvent(const DiscreteTriple& t, cx lambda) {
    Lu f = factor_shifted(t, lambda, "a0_resolvent");
    Matrix rhs(t.n, t.n);
    for (int i = 0; i < t.n; ++i) rhs(i, i) = t.w[i];
    return f.solve(rhs);
}

std::vector<double> a0_eigenvalues(const DiscreteTriple& t) {
    return hermitian_pencil_eig(t.k_sym, t.gram()).values;
}

Realization realize(const DiscreteTriple& t, const BoundaryParameter& theta) {
    if (theta.m() != t.m) throw Error("realize: boundary dimension mismatch");
    if (!theta.faithful()) throw Error("realize: rank-deficient boundary parameter");
    const int n = t.n;

    // domain constraints: G1 f must lie in ran(Y); the operator part also
    // requires W-orthogonality to the multivalued directions G1* W_b X ker(Y)
    Matrix constraints(0, n);
    Matrix ry = range_basis(theta.y);
    if (static_cast<int>(ry.cols()) < t.m) {
        Matrix u_perp = kernel_basis(adjoint(ry));        // ran(Y)^perp in C^m
        Matrix rows = mul(adjoint(u_perp), t.g1);
        constraints = rows;
    }
    Matrix ky = kernel_basis(theta.y);
    if (ky.cols() > 0) {
        Matrix dirs = mul(adjoint(mul(theta.x, ky)), mul(t.w_b, t.g1));
        constraints = constraints.rows() ? vcat(constraints, dirs) : dirs;
    }

    Matrix basis = constraints.rows() ? kernel_basis(constraints) : Matrix::identity(n);

    // Y^+ via SVD (d is small)
    Matrix yplus(theta.d(), theta.m());
    {
        Svd sy = svd(theta.y);
        const double cutoff = sy.values.empty() ? 0.0 : 1e-12 * std::max(sy.values[0], 1e-300);
        for (std::size_t k = 0; k < sy.values.size(); ++k) {
            if (sy.values[k] <= cutoff) continue;
            for (int i = 0; i < theta.d(); ++i)
                for (int j = 0; j < theta.m(); ++j)
                    yplus(i, j) += sy.v(i, k) * std::conj(sy.u(j, k)) / sy.values[k];
        }
    }

    Matrix coupling = mul(adjoint(t.g1), mul(t.w_b, mul(theta.x, mul(yplus, t.g1))));
    Matrix op = t.k_sym - coupling;
    Realization r;
    r.basis = basis;
    r.reduced = mul(adjoint(basis), mul(op, basis));
    r.gram = mul(adjoint(basis), apply_gram_left(t.w, basis));
    const double scale = std::max(norm_max(r.reduced), 1e-30);
    r.sa_check = norm_max(r.reduced - adjoint(r.reduced)) <= 1e-9 * scale;
    return r;
}

std::vector<double> Realization::eigenvalues_sym() const {
    return hermitian_pencil_eig(hermitian_part(reduced), gram).values;
}

std::vector<cx> Realization::eigenvalues_general() const {
    // eigenvalues of gram^{-1} reduced, similar to L^{-1} reduced L^{-*}
    Matrix l = cholesky(gram);
    const std::size_t n = reduced.rows();
    Matrix c = reduced;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            const cx lik = l(i, k);
            if (lik == cx(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) -= lik * c(k, j);
        }
        for (std::size_t j = 0; j < n; ++j) c(i, j) /= l(i, i);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            const cx ljk = std::conj(l(j, k));
            if (ljk == cx(0.0)) continue;
            for (std::size_t i = 0; i < n; ++i) c(i, j) -= c(i, k) * ljk;
        }
        const cx d = std::conj(l(j, j));
        for (std::size_t i = 0; i < n; ++i) c(i, j) /= d;
    }
    return eigenvalues(c);
}

namespace {

// (Y - M(l) X)^{-1}, with the eigenvalue-candidate guard.
Matrix krein_coupling(const DiscreteTriple& t, const BoundaryParameter& theta,
                      const Matrix& m_matrix) {
    if (theta.d() != theta.m())
        throw Error("krein coupling: relation must have d = m");
    Matrix ymx = theta.y - mul(m_matrix, theta.x);
    Lu f = lu_factor(ymx);
    if (t.m > 0 && !(cond_1_estimate(ymx, f) < 1e12))
        throw Error(t.label + ": Y - M(lambda) X not invertible; lambda is an "
                              "eigenvalue candidate of A_Theta");
    return f.solve(Matrix::identity(t.m));
}

} // namespace

Matrix krein_resolvent(const DiscreteTriple& t, const BoundaryParameter& theta, cx lambda) {
    Matrix r0 = a0_resolvent(t, lambda);
    if (norm_max(theta.x) == 0.0) return r0;   // A_Theta = A0, correction vanishes
    WeylSample s = weyl(t, lambda);
    Matrix inv = krein_coupling(t, theta, s.m_matrix);
    Matrix gs = gamma_star(t, lambda);
    return r0 + mul(s.gamma, mul(theta.x, mul(inv, gs)));
}

Matrix direct_resolvent(const DiscreteTriple& t, const BoundaryParameter& theta, cx lambda) {
    if (theta.d() != t.m) throw Error("direct_resolvent: relation must have d = m");
    const int n = t.n, d = theta.d();
    // coupled system on (f, h):
    //   (K - l W) f - G1* W_b X h = W g
    //   G1 f - Y h = 0
    Matrix sys(n + d, n + d);
    Matrix ks = shifted_stiffness(t, lambda);
    Matrix xb = mul(adjoint(t.g1), mul(t.w_b, theta.x));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) sys(i, j) = ks(i, j);
        for (int j = 0; j < d; ++j) sys(i, n + j) = -xb(i, j);
    }
    for (int i = 0; i < t.m; ++i) {
        for (int j = 0; j < n; ++j) sys(n + i, j) = t.g1(i, j);
        for (int j = 0; j < d; ++j) sys(n + i, n + j) = -theta.y(i, j);
    }
    Lu f = lu_factor(sys);
    const double cond = cond_1_estimate(sys, f);
    if (!(cond < 1e13))
        throw IllConditionedError("direct_resolvent: coupled system ill-conditioned "
                                  "(lambda may be an eigenvalue)", cond);
    Matrix rhs(n + d, n);
    for (int i = 0; i < n; ++i) rhs(i, i) = t.w[i];
    Matrix sol = f.solve(rhs);
    Matrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = sol(i, j);
    return out;
}

std::vector<double> eigenvalues_via_weyl(const DiscreteTriple& t,
                                         const BoundaryParameter& theta, double a,
                                         double b, double tol, int scan_points) {
    if (!(b > a)) throw Error("eigenvalues_via_weyl: empty interval");
    for (double e : a0_eigenvalues(t))
        if (e > a && e < b)
            throw IntervalSplitError("eigenvalues_via_weyl: reference eigenvalue inside "
                                     "scan interval; split the interval", e);
    auto det_fn = [&](double x) {
        WeylSample s = weyl(t, cx(x, 0.0));
        Matrix ymx = theta.y - mul(s.m_matrix, theta.x);
        Lu f = lu_factor(ymx);
        const cx ld = f.log_abs_det();
        return std::copysign(std::exp(std::min(ld.real(), 300.0)), std::cos(ld.imag()));
    };
    std::vector<double> roots;
    double prev_x = a, prev_v = det_fn(a);
    for (int i = 1; i <= scan_points; ++i) {
        const double x = a + (b - a) * i / scan_points;
        double v;
        try {
            v = det_fn(x);
        } catch (const NearEigenvalueError&) {
            continue;
        }
        if ((prev_v < 0.0) != (v < 0.0)) {
            double lo = prev_x, hi = x, flo = prev_v;
            while (hi - lo > tol * (1.0 + std::abs(lo))) {
                const double mid = 0.5 * (lo + hi);
                const double fm = det_fn(mid);
                if (fm == 0.0) { lo = hi = mid; break; }
                if ((flo < 0.0) != (fm < 0.0)) hi = mid;
                else { lo = mid; flo = fm; }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    return roots;
}

TraceCheck trace_formula_check(const DiscreteTriple& t, const BoundaryParameter& theta,
                               cx lambda) {
    TraceCheck out;
    if (norm_max(theta.x) == 0.0) {
        out.lhs = out.rhs = 0.0;
        out.defect = 0.0;
        return out;
    }
    Matrix direct = direct_resolvent(t, theta, lambda);
    Matrix r0 = a0_resolvent(t, lambda);
    out.lhs = trace(direct - r0);
    WeylSample s = weyl(t, lambda);
    Matrix inv = krein_coupling(t, theta, s.m_matrix);
    Matrix mp = weyl_derivative(t, lambda);
    out.rhs = trace(mul(mp, mul(theta.x, inv)));
    out.defect = std::abs(out.lhs - out.rhs);
    return out;
}

double nevanlinna_check(const DiscreteTriple& t, cx lambda) {
    if (lambda.imag() == 0.0)
        throw Error("nevanlinna_check: needs Im lambda != 0");
    WeylSample s = weyl(t, lambda);
    Matrix form = skew_part(mul(t.w_b, s.m_matrix));
    form *= cx(1.0 / lambda.imag());
    return hermitian_pencil_eig(form, t.w_b).values.front();
}

DissipativityReport dissipativity_check(const DiscreteTriple& t,
                                        const BoundaryParameter& theta, cx lambda) {
    DissipativityReport rep;
    rep.theta_dissipative = theta.dissipative(t.w_b);
    rep.theta_accumulative = theta.accumulative(t.w_b);

    Realization r = realize(t, theta);
    // `reduced` is the quadratic-form matrix of the realization, so its skew
    // part is exactly Im <A f, f> on the reduced coordinates
    Matrix im_form = skew_part(r.reduced);
    rep.min_form_imag = r.reduced.rows()
                            ? hermitian_pencil_eig(im_form, r.gram).values.front()
                            : 0.0;

    rep.eigenvalues = r.eigenvalues_general();
    rep.min_imag = std::numeric_limits<double>::infinity();
    for (const cx& ev : rep.eigenvalues) rep.min_imag = std::min(rep.min_imag, ev.imag());

    // Krein's formula holds in the half-plane opposite to the dissipation
    cx probe = lambda;
    if (rep.theta_dissipative && probe.imag() > 0.0) probe = std::conj(probe);
    if (rep.theta_accumulative && !rep.theta_dissipative && probe.imag() < 0.0)
        probe = std::conj(probe);
    Matrix k = krein_resolvent(t, theta, probe);
    Matrix d = direct_resolvent(t, theta, probe);
    rep.krein_defect = norm_max(k - d) / std::max(norm_max(k), 1e-30);
    return rep;
}

DiscreteTriple synthetic_triple(int n, int m, std::uint64_t seed) {
    if (m >= n) throw Error("synthetic_triple: need m < n");
    Rng rng(seed);
    Matrix k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            const cx v = rng.normal_cx();
            k(i, j) = v;
            k(j, i) = std::conj(v);
        }
    for (int i = 0; i < n; ++i) k(i, i) = cx(double(n) + 3.0 * rng.uniform(), 0.0);
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = 0.5 + rng.uniform();
    Matrix w_b(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j) {
            const cx v = 0.2 * rng.normal_cx();
            w_b(i, j) = v;
            w_b(j, i) = std::conj(v);
        }
    for (int i = 0; i < m; ++i) w_b(i, i) = 1.0 + 0.5 * rng.uniform();
    Matrix g1(m, n), g0(m, n);
    std::vector<int> bnodes;
    for (int i = 0; i < m; ++i) {
        bnodes.push_back(n - m + i);
        g1(i, n - m + i) = 1.0 + rng.uniform();
        for (int j = 0; j < n; ++j) g0(i, j) = rng.normal_cx();
    }
    return make_triple(std::move(k), std::move(w), std::move(w_b), std::move(g0),
                       std::move(g1), std::move(bnodes),
                       "synthetic(" + std::to_string(n) + "," + std::to_string(m) + ")");
}

} // namespace qbt
