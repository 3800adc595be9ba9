#include "qbt/disk.hpp"

#include <cmath>

#include "qbt/bessel.hpp"
#include "qbt/quadrature.hpp"

namespace qbt {
namespace disk {

namespace {

double sqrt_neg(double lambda, const char* who) {
    if (!(lambda < 0.0)) throw Error(std::string(who) + ": needs real lambda < 0");
    return std::sqrt(-lambda);
}

} // namespace

double mode_weyl(int k, double lambda) {
    const double s = sqrt_neg(lambda, "mode_weyl");
    BesselIK b = bessel_ik(std::abs(k), s);
    return scaled_ratio(b.i, b.ip) / s;
}

double mode_weyl_derivative(int k, double lambda) {
    const double s = sqrt_neg(lambda, "mode_weyl_derivative");
    const int ka = std::abs(k);
    BesselIK b = bessel_ik(ka, s);
    // m(s) = I/(s I'); I'' = (1 + k^2/s^2) I - I'/s from the Bessel equation;
    // dm/ds = [s I'^2 - I I' - s I I''] / (s I')^2 in I'-normalized ratios
    const double i_over_ip = scaled_ratio(b.i, b.ip);
    const double ipp_over_ip = (1.0 + double(ka) * ka / (s * s)) * i_over_ip - 1.0 / s;
    const double dm_ds = (s - i_over_ip - s * i_over_ip * ipp_over_ip) / (s * s);
    return dm_ds * (-0.5 / s);   // lambda = -s^2
}

double mode_gamma_norm_sq(int k, double lambda) {
    const double s = sqrt_neg(lambda, "mode_gamma_norm_sq");
    const int ka = std::abs(k);
    BesselIK b = bessel_ik(ka, s);
    const double log_denom = b.ip.log_abs() + std::log(s);
    // u(r) = I_k(s r) / (s I_k'(s)); integrate u^2 r with grading towards r=1
    QuadratureRule rule = (ka <= 8) ? composite_gauss(0.0, 1.0, 24)
                                    : graded_gauss_right(0.0, 1.0, 48, 0.82);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = rule.nodes[i];
        const double x = std::max(s * r, 1e-6);
        Scaled ik = bessel_i_scaled(ka, x);
        const double u = ik.sign() * std::exp(ik.log_abs() - log_denom);
        acc += rule.weights[i] * r * u * u;
    }
    return acc;
}

double mode_gamma_norm_sq_closed(int k, double lambda) {
    const double s = sqrt_neg(lambda, "mode_gamma_norm_sq_closed");
    const int ka = std::abs(k);
    BesselIK b = bessel_ik(ka, s);
    // int_0^s x I_k(x)^2 dx = [(s^2 + k^2) I^2 - s^2 I'^2] / 2
    const double i_over_ip = scaled_ratio(b.i, b.ip);
    const double bracket = 0.5 * ((s * s + double(ka) * ka) * i_over_ip * i_over_ip - s * s);
    // g^2 = bracket / (s^2 * (s I')^2) in units of I'^2
    return bracket / (s * s * s * s);
}

ModeOperator mode_operator(int k, double lambda) {
    ModeOperator m;
    m.k = k;
    m.lambda = lambda;
    m.m_k = mode_weyl(k, lambda);
    m.g_sq = mode_gamma_norm_sq_closed(k, lambda);
    m.m_prime = mode_weyl_derivative(k, lambda);
    return m;
}

BoundaryMultiplier BoundaryMultiplier::dirichlet() {
    BoundaryMultiplier b;
    b.kind = Kind::dirichlet;
    return b;
}

BoundaryMultiplier BoundaryMultiplier::robin(double theta_const) {
    BoundaryMultiplier b;
    b.kind = Kind::robin_const;
    b.value = theta_const;
    return b;
}

BoundaryMultiplier BoundaryMultiplier::robin_seq(std::vector<double> theta_k) {
    BoundaryMultiplier b;
    b.kind = Kind::robin_modes;
    b.mode_values = std::move(theta_k);
    return b;
}

double BoundaryMultiplier::theta(int k) const {
    switch (kind) {
        case Kind::robin_const: return value;
        case Kind::robin_modes: {
            const std::size_t idx = static_cast<std::size_t>(std::abs(k));
            if (idx >= mode_values.size())
                throw Error("BoundaryMultiplier: mode sequence too short");
            return mode_values[idx];
        }
        default:
            throw Error("BoundaryMultiplier: no multiplier value for this kind");
    }
}

double correction_coefficient(const BoundaryMultiplier& bc, int k, double m_value) {
    switch (bc.kind) {
        case BoundaryMultiplier::Kind::neumann:
            return 0.0;
        case BoundaryMultiplier::Kind::dirichlet:
            return -1.0 / m_value;
        default: {
            const double th = bc.theta(k);
            const double denom = th - m_value;
            if (std::abs(denom) <= 1e-12 * (std::abs(th) + std::abs(m_value)))
                throw ModeCollisionError(
                    "boundary multiplier collides with the Weyl value at mode " +
                        std::to_string(k),
                    k);
            return 1.0 / denom;
        }
    }
}

namespace {

SingularSpectrum resdiff_impl(const BoundaryMultiplier& a, const BoundaryMultiplier& b,
                              double lambda, int modes, Exec exec) {
    std::vector<double> per_mode(modes + 1);
    std::vector<std::string> failures(modes + 1);
    std::vector<int> failed_mode(modes + 1, -1);
    parallel_for(exec, modes + 1, [&](std::ptrdiff_t k) {
        try {
            const double m = mode_weyl(static_cast<int>(k), lambda);
            const double g2 = mode_gamma_norm_sq_closed(static_cast<int>(k), lambda);
            const double ca = correction_coefficient(a, static_cast<int>(k), m);
            const double cb = correction_coefficient(b, static_cast<int>(k), m);
            per_mode[k] = g2 * std::abs(ca - cb);
        } catch (const Error& e) {
            failures[k] = e.what();
            failed_mode[k] = static_cast<int>(k);
        }
    });
    for (int k = 0; k <= modes; ++k)
        if (failed_mode[k] >= 0) throw ModeCollisionError(failures[k], k);
    return merge_mode_spectrum(per_mode);
}

} // namespace

SingularSpectrum resdiff_svals(const BoundaryMultiplier& a, const BoundaryMultiplier& b,
                               double lambda, int modes, Exec exec) {
    return resdiff_impl(a, b, lambda, modes, exec);
}

SingularSpectrum resdiff_svals_serial(const BoundaryMultiplier& a,
                                      const BoundaryMultiplier& b, double lambda,
                                      int modes) {
    return resdiff_impl(a, b, lambda, modes, Exec::serial);
}

DiskTrace trace_check_disk(const BoundaryMultiplier& bc, double lambda, int modes,
                           Exec exec) {
    DiskTrace out;
    if (bc.kind == BoundaryMultiplier::Kind::neumann) return out;   // 0 = 0
    std::vector<double> lhs_terms(modes + 1), rhs_terms(modes + 1);
    parallel_for(exec, modes + 1, [&](std::ptrdiff_t k) {
        const int kk = static_cast<int>(k);
        const double m = mode_weyl(kk, lambda);
        const double c = correction_coefficient(bc, kk, m);
        const double mult = (kk == 0) ? 1.0 : 2.0;
        lhs_terms[k] = mult * mode_gamma_norm_sq(kk, lambda) * c;      // quadrature route
        rhs_terms[k] = mult * mode_weyl_derivative(kk, lambda) * c;    // derivative route
    });
    for (int k = 0; k <= modes; ++k) {
        out.lhs += lhs_terms[k];
        out.rhs += rhs_terms[k];
    }
    out.defect = std::abs(out.lhs - out.rhs);
    // tail estimate: the summand decays like C k^{-3}; bound the remainder by
    // extrapolating the last term, sum_{k > K} ~ |a_K| K / 2
    const double last = std::abs(rhs_terms[modes]);
    out.tail_bound = 0.5 * last * modes;
    return out;
}

DiscreteTriple mode_triple(int k, int n_grid) {
    if (k < 0) k = -k;
    if (n_grid < 64) throw Error("mode_triple: grid too small");
    const int n = n_grid;
    const double h = 1.0 / (n - 0.5);   // nodes r_j = h/2 + j h, last node at 1
    std::vector<double> r(n), w(n);
    for (int j = 0; j < n; ++j) r[j] = 0.5 * h + j * h;
    for (int j = 0; j < n; ++j) {
        const double left = (j == 0) ? 0.0 : r[j] - 0.5 * h;
        const double right = (j == n - 1) ? 1.0 : r[j] + 0.5 * h;
        w[j] = 0.5 * (right * right - left * left);   // exact cell integral of r dr
    }

    Matrix ks(n, n);
    for (int e = 0; e + 1 < n; ++e) {
        const double rmid = 0.5 * (r[e] + r[e + 1]);
        const double c = rmid / h;
        ks(e, e) += c;
        ks(e + 1, e + 1) += c;
        ks(e, e + 1) -= c;
        ks(e + 1, e) -= c;
    }
    if (k > 0)
        for (int j = 0; j < n; ++j)
            ks(j, j) += w[j] * double(k) * k / (r[j] * r[j]);

    Matrix g1(1, n);
    g1(0, n - 1) = 1.0;
    Matrix g0(1, n);   // outward derivative at r = 1, one-sided second order
    g0(0, n - 1) = 1.5 / h;
    g0(0, n - 2) = -2.0 / h;
    g0(0, n - 3) = 0.5 / h;

    return make_triple(std::move(ks), std::move(w), Matrix::identity(1), std::move(g0),
                       std::move(g1), {n - 1},
                       "disk-mode(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")");
}

DecayFit weyl_sequence_fit(double lambda, int modes) {
    std::vector<double> m(modes + 1);
    for (int k = 0; k <= modes; ++k) m[k] = std::abs(mode_weyl(k, lambda));
    SingularSpectrum s = merge_mode_spectrum(m);
    FitWindow w;
    w.k_min = 10;
    w.k_max = std::min<std::size_t>(200, s.values.size());
    return fit_decay(s, w);
}

DecayFit gamma_sequence_fit(double lambda, int modes) {
    std::vector<double> g(modes + 1);
    for (int k = 0; k <= modes; ++k)
        g[k] = std::sqrt(mode_gamma_norm_sq_closed(k, lambda));
    SingularSpectrum s = merge_mode_spectrum(g);
    FitWindow w;
    w.k_min = 10;
    w.k_max = std::min<std::size_t>(200, s.values.size());
    return fit_decay(s, w);
}

} // namespace disk
} // namespace qbt
