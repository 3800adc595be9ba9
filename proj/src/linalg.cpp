#include "qbt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbt {

// ---------------------------------------------------------------------------
// LU

Lu lu_factor(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error("lu_factor: matrix not square");
    if (!all_finite(a)) throw Error("lu_factor: non-finite entries");
    const std::size_t n = a.rows();
    Lu f;
    f.lu = a;
    f.piv.resize(n);
    std::iota(f.piv.begin(), f.piv.end(), 0);
    Matrix& m = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(m(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            std::swap(f.piv[k], f.piv[p]);
            f.sign = -f.sign;
        }
        const cx pivot = m(k, k);
        if (pivot == cx(0.0)) continue;   // singular; detected by cond estimate
        for (std::size_t i = k + 1; i < n; ++i) {
            const cx l = m(i, k) / pivot;
            m(i, k) = l;
            if (l == cx(0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    return f;
}

Matrix Lu::solve(const Matrix& b) const {
    const std::size_t nn = n(), nb = b.cols();
    Matrix x(nn, nb);
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nb; ++j) x(i, j) = b(piv[i], j);
    // forward
    for (std::size_t i = 1; i < nn; ++i)
        for (std::size_t k = 0; k < i; ++k) {
            const cx l = lu(i, k);
            if (l == cx(0.0)) continue;
            for (std::size_t j = 0; j < nb; ++j) x(i, j) -= l * x(k, j);
        }
    // backward
    for (std::size_t ii = nn; ii-- > 0;) {
        const cx d = lu(ii, ii);
        if (d == cx(0.0)) throw Error("Lu::solve: exactly singular factor");
        for (std::size_t j = 0; j < nb; ++j) x(ii, j) /= d;
        for (std::size_t k = 0; k < ii; ++k) {
            const cx u = lu(k, ii);
            if (u == cx(0.0)) continue;
            for (std::size_t j = 0; j < nb; ++j) x(k, j) -= u * x(ii, j);
        }
    }
    return x;
}

std::vector<cx> Lu::solve_vec(const std::vector<cx>& b) const {
    Matrix bm(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) bm(i, 0) = b[i];
    Matrix xm = solve(bm);
    std::vector<cx> x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) x[i] = xm(i, 0);
    return x;
}

Matrix Lu::solve_adjoint(const Matrix& b) const {
    // A* x = b  <=>  U* L* P x = b
    const std::size_t nn = n(), nb = b.cols();
    Matrix y = b;
    // U* y = b (U* lower triangular with conj entries)
    for (std::size_t i = 0; i < nn; ++i) {
        const cx d = std::conj(lu(i, i));
        if (d == cx(0.0)) throw Error("Lu::solve_adjoint: singular factor");
        for (std::size_t k = 0; k < i; ++k) {
            const cx u = std::conj(lu(k, i));
            if (u == cx(0.0)) continue;
            for (std::size_t j = 0; j < nb; ++j) y(i, j) -= u * y(k, j);
        }
        for (std::size_t j = 0; j < nb; ++j) y(i, j) /= d;
    }
    // L* z = y (L* upper triangular, unit diagonal)
    for (std::size_t ii = nn; ii-- > 0;)
        for (std::size_t k = ii + 1; k < nn; ++k) {
            const cx l = std::conj(lu(k, ii));
            if (l == cx(0.0)) continue;
            for (std::size_t j = 0; j < nb; ++j) y(ii, j) -= l * y(k, j);
        }
    // x = P^T z: piv maps new row -> original row
    Matrix x(nn, nb);
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nb; ++j) x(piv[i], j) = y(i, j);
    return x;
}

cx Lu::log_abs_det() const {
    double lg = 0.0, arg = (sign < 0) ? pi : 0.0;
    for (std::size_t i = 0; i < n(); ++i) {
        const cx d = lu(i, i);
        lg += std::log(std::abs(d));
        arg += std::arg(d);
    }
    return cx(lg, arg);
}

double cond_1_estimate(const Matrix& a, const Lu& f) {
    const std::size_t n = a.rows();
    if (n == 0) return 0.0;
    // Hager's method for ||A^{-1}||_1 using solves with A and A*.
    Matrix x(n, 1);
    for (std::size_t i = 0; i < n; ++i) x(i, 0) = 1.0 / double(n);
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        Matrix y = f.solve(x);
        est = norm_1(y);
        Matrix xi(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(y(i, 0));
            xi(i, 0) = (m == 0.0) ? cx(1.0) : y(i, 0) / m;
        }
        Matrix z = f.solve_adjoint(xi);
        std::size_t jmax = 0;
        double zmax = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(z(i, 0)) > zmax) { zmax = std::abs(z(i, 0)); jmax = i; }
        double zx = 0.0;
        for (std::size_t i = 0; i < n; ++i) zx += std::real(std::conj(z(i, 0)) * x(i, 0));
        if (zmax <= zx + 1e-300) break;
        x = Matrix(n, 1);
        x(jmax, 0) = 1.0;
    }
    return est * norm_1(a);
}

Matrix solve(const Matrix& a, const Matrix& b, double cond_limit) {
    Lu f = lu_factor(a);
    bool singular = false;
    for (std::size_t i = 0; i < f.n(); ++i)
        if (f.lu(i, i) == cx(0.0)) singular = true;
    const double cond = singular ? std::numeric_limits<double>::infinity()
                                 : cond_1_estimate(a, f);
    if (!(cond < cond_limit))
        throw IllConditionedError("solve: condition estimate " + std::to_string(cond) +
                                      " exceeds limit",
                                  cond);
    return f.solve(b);
}

// ---------------------------------------------------------------------------
// Jacobi rotations for Hermitian matrices.

namespace {

struct Rotation {
    double c;
    cx s;
};

// Rotation diagonalizing [[app, apq], [conj(apq), aqq]] (app, aqq real).
Rotation make_rotation(double app, double aqq, cx apq) {
    const double absq = std::abs(apq);
    if (absq == 0.0) return {1.0, cx(0.0)};
    const double tau = (aqq - app) / (2.0 * absq);
    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const cx phase = apq / absq;
    return {c, t * c * phase};
}

void apply_rotation_herm(Matrix& a, Matrix& v, std::size_t p, std::size_t q,
                         const Rotation& r) {
    const std::size_t n = a.rows();
    const double c = r.c;
    const cx s = r.s;
    for (std::size_t k = 0; k < n; ++k) {       // columns: A <- A J
        const cx akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - std::conj(s) * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {       // rows: A <- J* A
        const cx apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = std::conj(s) * apk + c * aqk;
    }
    for (std::size_t k = 0; k < n; ++k) {       // accumulate V <- V J
        const cx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - std::conj(s) * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

double off_diag_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Round-robin tournament schedule: n slots (n even), n-1 rounds of n/2
// disjoint pairs covering every pair exactly once.
std::vector<std::vector<std::pair<int, int>>> round_robin(int n_slots) {
    const int n = (n_slots % 2 == 0) ? n_slots : n_slots + 1;  // pad with bye
    std::vector<int> ring(n);
    std::iota(ring.begin(), ring.end(), 0);
    std::vector<std::vector<std::pair<int, int>>> rounds;
    for (int r = 0; r < n - 1; ++r) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n / 2; ++i) {
            int a = ring[i], b = ring[n - 1 - i];
            if (a < n_slots && b < n_slots)
                pairs.emplace_back(std::min(a, b), std::max(a, b));
        }
        rounds.push_back(std::move(pairs));
        // rotate all but the first element
        int last = ring[n - 1];
        for (int i = n - 1; i > 1; --i) ring[i] = ring[i - 1];
        ring[1] = last;
    }
    return rounds;
}

} // namespace

HermEig hermitian_eig(const Matrix& a_in, Exec exec) {
    if (a_in.rows() != a_in.cols()) throw Error("hermitian_eig: not square");
    if (a_in.rows() > 2000) throw Error("hermitian_eig: dimension above 2000");
    if (!all_finite(a_in)) throw Error("hermitian_eig: non-finite entries");
    {
        double defect = 0.0;
        for (std::size_t i = 0; i < a_in.rows(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                defect = std::max(defect, std::abs(a_in(i, j) - std::conj(a_in(j, i))));
        const double scale = std::max(norm_max(a_in), 1e-300);
        if (defect > 1e-12 * scale)
            throw Error("hermitian_eig: input not Hermitian, defect " +
                        std::to_string(defect / scale) + " relative");
    }

    const std::size_t n = a_in.rows();
    Matrix a = hermitian_part(a_in);   // clean roundoff-level asymmetry
    Matrix v = Matrix::identity(n);
    const double tol = 1e-13 * std::max(norm_fro(a), 1e-300);
    const int max_sweeps = 60;

    if (n > 1) {
        bool converged = false;
        if (exec == Exec::parallel) {
            auto rounds = round_robin(static_cast<int>(n));
            for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
                if (off_diag_norm(a) <= tol) { converged = true; break; }
                for (const auto& round : rounds) {
                    std::vector<Rotation> rot(round.size());
                    parallel_for(Exec::parallel, std::ptrdiff_t(round.size()), [&](std::ptrdiff_t i) {
                        auto [p, q] = round[i];
                        rot[i] = make_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
                    });
                    // column phase, disjoint column pairs
                    parallel_for(Exec::parallel, std::ptrdiff_t(round.size()), [&](std::ptrdiff_t i) {
                        auto [p, q] = round[i];
                        const auto& r = rot[i];
                        for (std::size_t k = 0; k < n; ++k) {
                            const cx akp = a(k, p), akq = a(k, q);
                            a(k, p) = r.c * akp - std::conj(r.s) * akq;
                            a(k, q) = r.s * akp + r.c * akq;
                        }
                        for (std::size_t k = 0; k < n; ++k) {
                            const cx vkp = v(k, p), vkq = v(k, q);
                            v(k, p) = r.c * vkp - std::conj(r.s) * vkq;
                            v(k, q) = r.s * vkp + r.c * vkq;
                        }
                    });
                    // row phase
                    parallel_for(Exec::parallel, std::ptrdiff_t(round.size()), [&](std::ptrdiff_t i) {
                        auto [p, q] = round[i];
                        const auto& r = rot[i];
                        for (std::size_t k = 0; k < n; ++k) {
                            const cx apk = a(p, k), aqk = a(q, k);
                            a(p, k) = r.c * apk - r.s * aqk;
                            a(q, k) = std::conj(r.s) * apk + r.c * aqk;
                        }
                    });
                }
            }
            converged = off_diag_norm(a) <= tol;
        } else {
            for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
                if (off_diag_norm(a) <= tol) { converged = true; break; }
                for (std::size_t p = 0; p + 1 < n; ++p)
                    for (std::size_t q = p + 1; q < n; ++q) {
                        if (std::abs(a(p, q)) == 0.0) continue;
                        Rotation r = make_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
                        apply_rotation_herm(a, v, p, q, r);
                    }
            }
            converged = off_diag_norm(a) <= tol;
        }
        if (!converged)
            throw Error("hermitian_eig: no convergence after 60 sweeps");
    }

    HermEig out;
    out.values.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = d[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

HermEig hermitian_pencil_eig(const Matrix& a, const Matrix& b, Exec exec) {
    Matrix l = cholesky(b);
    // C = L^{-1} A L^{-*}
    const std::size_t n = a.rows();
    Matrix c = a;
    // forward solve L X = A (in place on columns)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            const cx lik = l(i, k);
            if (lik == cx(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) -= lik * c(k, j);
        }
        for (std::size_t j = 0; j < n; ++j) c(i, j) /= l(i, i);
    }
    // now solve X L* = C from the right: columns of L*, i.e. rows of L
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            const cx ljk = std::conj(l(j, k));
            if (ljk == cx(0.0)) continue;
            for (std::size_t i = 0; i < n; ++i) c(i, j) -= c(i, k) * ljk;
        }
        const cx d = std::conj(l(j, j));
        for (std::size_t i = 0; i < n; ++i) c(i, j) /= d;
    }
    HermEig e = hermitian_eig(hermitian_part(c), exec);
    // back-transform vectors: x = L^{-*} y
    Matrix x = e.vectors;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t ii = n; ii-- > 0;) {
            cx s = x(ii, j);
            for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * x(k, j);
            x(ii, j) = s / std::conj(l(ii, ii));
        }
    }
    e.vectors = std::move(x);
    return e;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD.

namespace {

// Orthogonalize columns p, q of g; returns true if a rotation was applied.
bool orthogonalize_pair(Matrix& g, Matrix& v, std::size_t p, std::size_t q,
                        double tol) {
    const std::size_t m = g.rows();
    cx apq = 0.0;
    double app = 0.0, aqq = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        apq += std::conj(g(k, p)) * g(k, q);
        app += std::norm(g(k, p));
        aqq += std::norm(g(k, q));
    }
    if (std::abs(apq) <= tol * std::sqrt(app * aqq)) return false;
    Rotation r = make_rotation(app, aqq, apq);
    for (std::size_t k = 0; k < m; ++k) {
        const cx gkp = g(k, p), gkq = g(k, q);
        g(k, p) = r.c * gkp - std::conj(r.s) * gkq;
        g(k, q) = r.s * gkp + r.c * gkq;
    }
    for (std::size_t k = 0; k < v.rows(); ++k) {
        const cx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = r.c * vkp - std::conj(r.s) * vkq;
        v(k, q) = r.s * vkp + r.c * vkq;
    }
    return true;
}

} // namespace

Svd svd(const Matrix& a, Exec exec) {
    if (!all_finite(a)) throw Error("svd: non-finite entries");
    const bool wide = a.cols() > a.rows();
    Matrix g = wide ? adjoint(a) : a;          // work on tall matrix
    const std::size_t m = g.rows(), n = g.cols();
    Matrix v = Matrix::identity(n);
    const double tol = 1e-14;
    const int max_sweeps = 60;
    bool converged = (n <= 1);
    if (n > 1) {
        if (exec == Exec::parallel) {
            auto rounds = round_robin(static_cast<int>(n));
            for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
                int changed = 0;
                for (const auto& round : rounds) {
                    std::vector<int> hit(round.size(), 0);
                    parallel_for(Exec::parallel, std::ptrdiff_t(round.size()), [&](std::ptrdiff_t i) {
                        auto [p, q] = round[i];
                        hit[i] = orthogonalize_pair(g, v, p, q, tol) ? 1 : 0;
                    });
                    for (int h : hit) changed += h;
                }
                if (changed == 0) converged = true;
            }
        } else {
            for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
                int changed = 0;
                for (std::size_t p = 0; p + 1 < n; ++p)
                    for (std::size_t q = p + 1; q < n; ++q)
                        changed += orthogonalize_pair(g, v, p, q, tol) ? 1 : 0;
                if (changed == 0) converged = true;
            }
        }
        if (!converged) throw Error("svd: no convergence after 60 sweeps");
    }

    std::vector<double> s(n);
    for (std::size_t j = 0; j < n; ++j) {
        double nrm = 0.0;
        for (std::size_t k = 0; k < m; ++k) nrm += std::norm(g(k, j));
        s[j] = std::sqrt(nrm);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return s[i] > s[j]; });

    Matrix u(m, n), vv(n, n);
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t o = order[j];
        sv[j] = s[o];
        for (std::size_t k = 0; k < m; ++k)
            u(k, j) = (s[o] > 0.0) ? g(k, o) / s[o] : cx(0.0);
        for (std::size_t k = 0; k < n; ++k) vv(k, j) = v(k, o);
    }

    Svd out;
    out.values = std::move(sv);
    if (wide) {
        out.u = std::move(vv);
        out.v = std::move(u);
    } else {
        out.u = std::move(u);
        out.v = std::move(vv);
    }
    return out;
}

std::vector<double> singular_values(const Matrix& a, Exec exec) {
    return svd(a, exec).values;
}

// ---------------------------------------------------------------------------
// General complex eigenvalues: Hessenberg + shifted QR (eigenvalues only).

namespace {

void hessenberg(Matrix& a) {
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder on column k below the subdiagonal
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::norm(a(i, k));
        scale = std::sqrt(scale);
        if (scale == 0.0) continue;
        cx alpha = a(k + 1, k);
        const double aab = std::abs(alpha);
        const cx phase = (aab == 0.0) ? cx(1.0) : alpha / aab;
        const cx beta = -phase * scale;
        std::vector<cx> w(n, cx(0.0));
        w[k + 1] = alpha - beta;
        for (std::size_t i = k + 2; i < n; ++i) w[i] = a(i, k);
        double wn = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) wn += std::norm(w[i]);
        if (wn == 0.0) continue;
        // A <- (I - 2 w w*/|w|^2) A
        for (std::size_t j = 0; j < n; ++j) {
            cx dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(w[i]) * a(i, j);
            dot *= 2.0 / wn;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * w[i];
        }
        // A <- A (I - 2 w w*/|w|^2)
        for (std::size_t i = 0; i < n; ++i) {
            cx dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * w[j];
            dot *= 2.0 / wn;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(w[j]);
        }
        a(k + 1, k) = beta;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

} // namespace

std::vector<cx> eigenvalues(const Matrix& a_in, int max_iter_per_eig) {
    if (a_in.rows() != a_in.cols()) throw Error("eigenvalues: not square");
    if (!all_finite(a_in)) throw Error("eigenvalues: non-finite entries");
    const std::size_t n = a_in.rows();
    std::vector<cx> ev;
    ev.reserve(n);
    if (n == 0) return ev;
    Matrix h = a_in;
    hessenberg(h);

    const double scale = std::max(norm_max(h), 1e-300);
    std::size_t hi = n - 1;
    int iters = 0;
    const int budget = max_iter_per_eig * static_cast<int>(n) + 200;
    int total = 0;
    while (true) {
        // deflate tiny subdiagonals
        while (hi > 0) {
            const double sub = std::abs(h(hi, hi - 1));
            const double local = std::abs(h(hi, hi)) + std::abs(h(hi - 1, hi - 1));
            if (sub <= 1e-15 * std::max(local, scale)) {
                h(hi, hi - 1) = 0.0;
                ev.push_back(h(hi, hi));
                --hi;
                iters = 0;
            } else {
                break;
            }
        }
        if (hi == 0) {
            ev.push_back(h(0, 0));
            break;
        }
        // find active block [lo, hi]
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double local = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
            if (sub <= 1e-15 * std::max(local, scale)) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        // Wilkinson shift from trailing 2x2
        const cx a11 = h(hi - 1, hi - 1), a12 = h(hi - 1, hi);
        const cx a21 = h(hi, hi - 1), a22 = h(hi, hi);
        const cx tr = a11 + a22, det = a11 * a22 - a12 * a21;
        const cx disc = std::sqrt(tr * tr - 4.0 * det);
        cx mu1 = 0.5 * (tr + disc), mu2 = 0.5 * (tr - disc);
        cx shift = (std::abs(mu1 - a22) < std::abs(mu2 - a22)) ? mu1 : mu2;
        if (iters > 0 && iters % 12 == 0) {
            // exceptional shift to break cycles
            shift = a22 + cx(std::abs(h(hi, hi - 1)), 0.0);
        }
        // implicit single-shift QR on the block via Givens
        // bulge chase: first column of (H - shift I)
        cx x = h(lo, lo) - shift;
        cx y = h(lo + 1, lo);
        for (std::size_t k = lo; k < hi; ++k) {
            // Givens zeroing y against x
            const double nr = std::hypot(std::abs(x), std::abs(y));
            cx c = 1.0, s = 0.0;
            if (nr > 0.0) {
                c = std::conj(x) / nr;   // so that [c s; -conj(s) conj(c)]* is applied
                s = std::conj(y) / nr;
            }
            // rows k, k+1: H <- G H with G = [[c, s], [-conj(s), conj(c)]]
            const std::size_t jstart = (k == 0) ? 0 : k - 1;
            for (std::size_t j = jstart; j < n; ++j) {
                const cx h1 = h(k, j), h2 = h(k + 1, j);
                h(k, j) = c * h1 + s * h2;
                h(k + 1, j) = -std::conj(s) * h1 + std::conj(c) * h2;
            }
            // columns k, k+1: H <- H G*
            const std::size_t iend = std::min(hi, k + 2);
            for (std::size_t i = 0; i <= iend; ++i) {
                const cx h1 = h(i, k), h2 = h(i, k + 1);
                h(i, k) = h1 * std::conj(c) + h2 * std::conj(s);
                h(i, k + 1) = -h1 * s + h2 * c;
            }
            if (k + 1 < hi) {
                x = h(k + 1, k);
                y = h(k + 2, k);
            }
        }
        ++iters;
        ++total;
        if (iters > max_iter_per_eig || total > budget)
            throw Error("eigenvalues: QR iteration did not converge");
    }
    return ev;
}

// ---------------------------------------------------------------------------
// Cholesky and subspace bases.

Matrix cholesky(const Matrix& a) {
    if (!is_hermitian(a, 1e-10)) throw Error("cholesky: input not Hermitian");
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            if (i == j) {
                const double d = s.real();
                if (d <= 0.0) throw Error("cholesky: matrix not positive definite");
                l(i, i) = std::sqrt(d);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass.
void mgs_project(std::vector<std::vector<cx>>& basis, std::vector<cx>& w) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) {
            cx dot = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) dot += std::conj(b[i]) * w[i];
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= dot * b[i];
        }
}

double vec_norm(const std::vector<cx>& w) {
    double s = 0.0;
    for (const auto& v : w) s += std::norm(v);
    return std::sqrt(s);
}

} // namespace

Matrix kernel_basis(const Matrix& c, double tol) {
    const std::size_t nc = c.rows(), n = c.cols();
    // orthonormalize the rows of C (as vectors in C^n)
    std::vector<std::vector<cx>> rows;
    double rmax = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
        std::vector<cx> w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = std::conj(c(i, j));
        rmax = std::max(rmax, vec_norm(w));
        mgs_project(rows, w);
        const double nr = vec_norm(w);
        if (nr > tol * std::max(rmax, 1e-300)) {
            for (auto& v : w) v /= nr;
            rows.push_back(std::move(w));
        }
    }
    // extend with coordinate vectors
    std::vector<std::vector<cx>> basis = rows;
    std::vector<std::vector<cx>> null_vecs;
    for (std::size_t j = 0; j < n && null_vecs.size() < n - rows.size(); ++j) {
        std::vector<cx> w(n, cx(0.0));
        w[j] = 1.0;
        mgs_project(basis, w);
        const double nr = vec_norm(w);
        if (nr > 1e-8) {
            for (auto& v : w) v /= nr;
            basis.push_back(w);
            null_vecs.push_back(std::move(w));
        }
    }
    Matrix z(n, null_vecs.size());
    for (std::size_t j = 0; j < null_vecs.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) z(i, j) = null_vecs[j][i];
    return z;
}

Matrix range_basis(const Matrix& a, double tol) {
    const std::size_t n = a.rows(), nc = a.cols();
    std::vector<std::vector<cx>> cols;
    double cmax = 0.0;
    for (std::size_t j = 0; j < nc; ++j) {
        std::vector<cx> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = a(i, j);
        cmax = std::max(cmax, vec_norm(w));
        mgs_project(cols, w);
        const double nr = vec_norm(w);
        if (nr > tol * std::max(cmax, 1e-300)) {
            for (auto& v : w) v /= nr;
            cols.push_back(std::move(w));
        }
    }
    Matrix q(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) q(i, j) = cols[j][i];
    return q;
}

} // namespace qbt
