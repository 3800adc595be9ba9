#include "qbt/delta.hpp"

#include <cmath>

#include "qbt/bessel.hpp"
#include "qbt/quadrature.hpp"

namespace qbt {
namespace delta {

namespace {

double sqrt_neg(double lambda, const char* who) {
    if (!(lambda < 0.0)) throw Error(std::string(who) + ": needs real lambda < 0");
    return std::sqrt(-lambda);
}

// int_0^s x I_k(x)^2 dx and int_s^inf x K_k(x)^2 dx via the antiderivative
// (x^2/2)(Z'^2 - (1 + k^2/x^2) Z^2), in Z'-normalized ratios.
double interior_bracket(const BesselIK& b, int k, double s) {
    const double rho = scaled_ratio(b.i, b.ip);   // I/I'
    return 0.5 * ((s * s + double(k) * k) * rho * rho - s * s);   // units of I'^2
}

double exterior_bracket(const BesselIK& b, int k, double s) {
    const double rho = scaled_ratio(b.k, b.kp);   // K/K'
    return 0.5 * (s * s - (s * s + double(k) * k) * rho * rho);   // units of K'^2
}

} // namespace

InterfaceMode interface_mode(int k, double lambda) {
    const double s = sqrt_neg(lambda, "interface_mode");
    const int ka = std::abs(k);
    BesselIK b = bessel_ik(ka, s);

    InterfaceMode m;
    m.k = k;
    m.lambda = lambda;

    // Weyl values
    m.m_cont = (b.i * b.k).value();
    m.m_jump = -1.0 / (s * s * (b.ip * b.kp).value());

    // gamma norms.  Continuous-trace solution with unit conormal sum:
    //   u_i = K_k(s) I_k(s r), u_e = I_k(s) K_k(s r)
    const double bi = interior_bracket(b, ka, s);   // in units of I'^2
    const double bk = exterior_bracket(b, ka, s);   // in units of K'^2
    const double kk_sq = std::pow((b.k * b.ip).value(), 2);   // (K I')^2
    const double ik_sq = std::pow((b.i * b.kp).value(), 2);   // (I K')^2
    m.g_cont_interior = kk_sq * bi / (s * s);
    m.g_cont_exterior = ik_sq * bk / (s * s);
    m.g_cont_sq = m.g_cont_interior + m.g_cont_exterior;

    // jump solution with unit exterior conormal: u_i = -I_k(sr)/(s I'),
    // u_e = -K_k(sr)/(s K')
    m.g_jump_sq = bi / (s * s * s * s) + bk / (s * s * s * s);

    // derivatives through the exact identity m' = g^2 of the respective triple
    m.m_cont_prime = m.g_cont_sq;
    m.m_jump_prime = m.g_jump_sq;
    return m;
}

double exterior_norm_quadrature(int k, double lambda, double radius) {
    const double s = sqrt_neg(lambda, "exterior_norm_quadrature");
    const int ka = std::abs(k);
    BesselIK b = bessel_ik(ka, s);
    const double log_ref = b.k.log_abs();
    // normalized integrand (K_k(s r)/K_k(s))^2 r on [1, R], graded to the left
    QuadratureRule rule = graded_gauss_left(1.0, radius, 60, 0.85);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = rule.nodes[i];
        Scaled kk = bessel_k_scaled(ka, std::min(s * r, 200.0));
        const double u = std::exp(kk.log_abs() - log_ref);
        acc += rule.weights[i] * r * u * u;
    }
    return acc;
}

double exterior_norm_closed(int k, double lambda) {
    const double s = sqrt_neg(lambda, "exterior_norm_closed");
    const int ka = std::abs(k);
    BesselIK b = bessel_ik(ka, s);
    // int_1^inf (K_k(sr)/K_k(s))^2 r dr = [s^2 (K'/K)^2 - (s^2 + k^2)] / (2 s^2)
    const double rho = scaled_ratio(b.kp, b.k);
    return 0.5 * (s * s * rho * rho - (s * s + double(ka) * ka)) / (s * s);
}

namespace {

// correction coefficients c = X (Y - m X)^{-1} per mode
double coeff_delta(double alpha, double m_cont, int k) {
    const double denom = 1.0 + alpha * m_cont;
    if (std::abs(denom) <= 1e-12 * (1.0 + std::abs(alpha * m_cont)))
        throw ModeCollisionError("delta strength hits an eigenvalue at mode " +
                                     std::to_string(k),
                                 k);
    return -alpha / denom;
}

double coeff_delta_prime(double beta, double m_jump, int k) {
    const double denom = -beta - m_jump;
    if (std::abs(denom) <= 1e-12 * (std::abs(beta) + std::abs(m_jump)))
        throw ModeCollisionError("delta' strength hits an eigenvalue at mode " +
                                     std::to_string(k),
                                 k);
    return 1.0 / denom;
}

} // namespace

std::vector<PerModeResolvent> realize_delta(double alpha, double lambda, int modes) {
    std::vector<PerModeResolvent> out;
    out.reserve(modes + 1);
    for (int k = 0; k <= modes; ++k) {
        InterfaceMode m = interface_mode(k, lambda);
        out.push_back({k, coeff_delta(alpha, m.m_cont, k), m.g_cont_sq});
    }
    return out;
}

std::vector<PerModeResolvent> realize_delta_prime(double beta, double lambda, int modes) {
    if (std::abs(beta) < 1e-12)
        throw Error("realize_delta_prime: strength must be bounded away from 0");
    std::vector<PerModeResolvent> out;
    out.reserve(modes + 1);
    for (int k = 0; k <= modes; ++k) {
        InterfaceMode m = interface_mode(k, lambda);
        out.push_back({k, coeff_delta_prime(beta, m.m_jump, k), m.g_jump_sq});
    }
    return out;
}

ChainPair pair_delta_vs_free(double alpha) { return {Interaction::delta, alpha, ReferenceOp::free_op}; }
ChainPair pair_delta_prime_vs_free(double beta) { return {Interaction::delta_prime, beta, ReferenceOp::free_op}; }
ChainPair pair_delta_prime_vs_neumann(double beta) { return {Interaction::delta_prime, beta, ReferenceOp::neumann_sum}; }
ChainPair pair_free_vs_dirichlet() { return {std::nullopt, 0.0, ReferenceOp::dirichlet_sum}; }
ChainPair pair_free_vs_neumann() { return {std::nullopt, 0.0, ReferenceOp::neumann_sum}; }
ChainPair pair_delta_vs_dirichlet(double alpha) { return {Interaction::delta, alpha, ReferenceOp::dirichlet_sum}; }

namespace {

double chain_mode_value(const ChainPair& pair, int k, double lambda) {
    InterfaceMode m = interface_mode(k, lambda);
    // every pair reduces to a difference of scalar corrections in one triple
    if (pair.a == Interaction::delta) {
        const double c = coeff_delta(pair.strength, m.m_cont, k);
        switch (pair.b) {
            case ReferenceOp::free_op:       return m.g_cont_sq * std::abs(c);
            case ReferenceOp::dirichlet_sum: return m.g_cont_sq * std::abs(c + 1.0 / m.m_cont);
            case ReferenceOp::neumann_sum:
                throw Error("chain_svals: delta vs N+N is not a single-triple pair");
        }
    }
    if (pair.a == Interaction::delta_prime) {
        const double c = coeff_delta_prime(pair.strength, m.m_jump, k);
        switch (pair.b) {
            case ReferenceOp::neumann_sum:   return m.g_jump_sq * std::abs(c);
            case ReferenceOp::free_op:       return m.g_jump_sq * std::abs(c + 1.0 / m.m_jump);
            case ReferenceOp::dirichlet_sum:
                throw Error("chain_svals: delta' vs D+D is not a single-triple pair");
        }
    }
    // A_free against the decoupled reference operators
    switch (pair.b) {
        case ReferenceOp::dirichlet_sum: return m.g_cont_sq / m.m_cont;
        case ReferenceOp::neumann_sum:   return m.g_jump_sq / m.m_jump;
        case ReferenceOp::free_op:       return 0.0;
    }
    throw Error("chain_svals: unsupported pair");
}

ChainResult chain_impl(const ChainPair& pair, double lambda, int modes, Exec exec) {
    std::vector<double> per_mode(modes + 1);
    std::vector<int> failed(modes + 1, -1);
    std::vector<std::string> messages(modes + 1);
    parallel_for(exec, modes + 1, [&](std::ptrdiff_t k) {
        try {
            per_mode[k] = chain_mode_value(pair, static_cast<int>(k), lambda);
        } catch (const Error& e) {
            failed[k] = static_cast<int>(k);
            messages[k] = e.what();
        }
    });
    for (int k = 0; k <= modes; ++k)
        if (failed[k] >= 0) throw ModeCollisionError(messages[k], k);
    ChainResult out;
    out.spectrum = merge_mode_spectrum(per_mode);
    FitWindow w;
    w.k_min = 10;
    w.k_max = std::min<std::size_t>(200, out.spectrum.values.size());
    out.fit = fit_decay(out.spectrum, w);
    return out;
}

} // namespace

ChainResult chain_svals(const ChainPair& pair, double lambda, int modes, Exec exec) {
    return chain_impl(pair, lambda, modes, exec);
}

ChainResult chain_svals_serial(const ChainPair& pair, double lambda, int modes) {
    return chain_impl(pair, lambda, modes, Exec::serial);
}

std::optional<double> delta_bound_state_mode0(double alpha) {
    if (alpha >= 0.0) return std::nullopt;   // repulsive: m_cont > 0, no root
    // solve 1 + alpha I_0(s) K_0(s) = 0; I_0 K_0 decreases from +inf to 0
    auto f = [alpha](double s) {
        BesselIK b = bessel_ik(0, s);
        return 1.0 + alpha * (b.i * b.k).value();
    };
    double lo = 1e-5, hi = 1.0;
    if (f(lo) > 0.0) return std::nullopt;   // cannot happen: I0 K0 -> inf
    while (f(hi) < 0.0 && hi < 180.0) hi *= 1.8;
    if (f(hi) < 0.0) return std::nullopt;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-13 * (1.0 + lo)) break;
    }
    const double s_root = 0.5 * (lo + hi);
    return -s_root * s_root;
}

namespace {

struct InterfaceGrid {
    std::vector<double> r;        // node radii
    std::vector<double> w;        // r-weighted cell masses
    int trace_interior = 0;       // index of the interior-side node at r = 1
    int trace_exterior = 0;       // index of the exterior-side node at r = 1 (jump grid)
    double h_interior = 0.0;
};

// interior staggered nodes on (0, 1] ending exactly at 1, exterior geometric
// nodes on (1, R]; `doubled` duplicates the r = 1 node for the jump triple.
InterfaceGrid make_grid(int n_i, int n_e, double radius, bool doubled) {
    InterfaceGrid g;
    const double h = 1.0 / (n_i - 0.5);
    g.h_interior = h;
    for (int j = 0; j < n_i; ++j) g.r.push_back(0.5 * h + j * h);
    g.trace_interior = n_i - 1;
    if (doubled) {
        g.r.push_back(1.0);
        g.trace_exterior = n_i;
    } else {
        g.trace_exterior = g.trace_interior;
    }
    const double rho = std::pow(radius, 1.0 / n_e);
    for (int j = 1; j <= n_e; ++j) g.r.push_back(std::pow(rho, j));

    const int n = static_cast<int>(g.r.size());
    g.w.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double left, right;
        if (j == 0) left = 0.0;
        else if (doubled && j == g.trace_exterior) left = 1.0;
        else left = 0.5 * (g.r[j - 1] + g.r[j]);
        if (j == n - 1) right = g.r[j];
        else if (doubled && j == g.trace_interior) right = 1.0;
        else right = 0.5 * (g.r[j] + g.r[j + 1]);
        g.w[j] = 0.5 * (right * right - left * left);
        if (!(g.w[j] > 0.0)) g.w[j] = 1e-12;   // doubled trace node: see below
    }
    return g;
}

Matrix stiffness(const InterfaceGrid& g, int k, bool doubled) {
    const int n = static_cast<int>(g.r.size());
    Matrix ks(n, n);
    for (int e = 0; e + 1 < n; ++e) {
        if (doubled && e == g.trace_interior) continue;   // no edge across the jump
        const double dr = g.r[e + 1] - g.r[e];
        const double rmid = 0.5 * (g.r[e] + g.r[e + 1]);
        const double c = rmid / dr;
        ks(e, e) += c;
        ks(e + 1, e + 1) += c;
        ks(e, e + 1) -= c;
        ks(e + 1, e) -= c;
    }
    if (k != 0)
        for (int j = 0; j < n; ++j)
            ks(j, j) += g.w[j] * double(k) * k / (g.r[j] * g.r[j]);
    return ks;
}

} // namespace

DiscreteTriple mode_triple_continuous(int k, int n_i, int n_e, double radius) {
    k = std::abs(k);
    InterfaceGrid g = make_grid(n_i, n_e, radius, /*doubled=*/false);
    Matrix ks = stiffness(g, k, false);
    const int n = static_cast<int>(g.r.size());
    const int a = g.trace_interior;

    Matrix g1(1, n);
    g1(0, a) = 1.0;
    // conormal sum: u'(1^-) - u'(1^+), one-sided second-order rows
    Matrix g0(1, n);
    const double hi = g.r[a] - g.r[a - 1];         // interior spacing
    g0(0, a) += 1.5 / hi;
    g0(0, a - 1) += -2.0 / hi;
    g0(0, a - 2) += 0.5 / hi;
    const double he1 = g.r[a + 1] - g.r[a];
    const double he2 = g.r[a + 2] - g.r[a];
    // derivative at the left end of the exterior mesh (non-uniform 3-point)
    const double d0 = -(he1 + he2) / (he1 * he2);
    const double d1 = he2 / (he1 * (he2 - he1));
    const double d2 = -he1 / (he2 * (he2 - he1));
    g0(0, a) += -d0;
    g0(0, a + 1) += -d1;
    g0(0, a + 2) += -d2;

    return make_triple(std::move(ks), g.w, Matrix::identity(1), std::move(g0),
                       std::move(g1), {a},
                       "delta-mode(k=" + std::to_string(k) + ")");
}

DiscreteTriple mode_triple_jump(int k, int n_i, int n_e, double radius) {
    k = std::abs(k);
    InterfaceGrid g = make_grid(n_i, n_e, radius, /*doubled=*/true);
    Matrix ks = stiffness(g, k, true);
    const int n = static_cast<int>(g.r.size());
    const int a = g.trace_interior, b = g.trace_exterior;

    // the doubled trace nodes carry the half-cells on their own sides
    Matrix g1(1, n);
    g1(0, b) = 1.0;
    g1(0, a) = -1.0;
    Matrix g0(1, n);   // exterior conormal = -u'(1^+)
    const double he1 = g.r[b + 1] - g.r[b];
    const double he2 = g.r[b + 2] - g.r[b];
    const double d0 = -(he1 + he2) / (he1 * he2);
    const double d1 = he2 / (he1 * (he2 - he1));
    const double d2 = -he1 / (he2 * (he2 - he1));
    g0(0, b) = -d0;
    g0(0, b + 1) = -d1;
    g0(0, b + 2) = -d2;

    return make_triple(std::move(ks), g.w, Matrix::identity(1), std::move(g0),
                       std::move(g1), {a, b},
                       "delta-prime-mode(k=" + std::to_string(k) + ")");
}

} // namespace delta
} // namespace qbt
