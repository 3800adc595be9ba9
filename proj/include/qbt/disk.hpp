#ifndef QBT_DISK_HPP
#define QBT_DISK_HPP

#include <vector>

#include "qbt/spectrum.hpp"
#include "qbt/triple.hpp"

namespace qbt {
namespace disk {

// -Laplace on the unit disk, decomposed over Fourier modes e^{i k theta}.
// The boundary maps are Gamma0 f = df/dr|_{r=1} (outward conormal) and
// Gamma1 f = f|_{r=1}; per mode the Weyl value is the scalar
// Neumann-to-Dirichlet quotient m_k(l) = I_k(s) / (s I_k'(s)), s = sqrt(-l).

/// One Fourier mode at one spectral point.
struct ModeOperator {
    int k = 0;
    double lambda = -1.0;
    double m_k = 0.0;       // scalar Weyl value
    double g_sq = 0.0;      // squared gamma-norm of the Gamma0-normalized solution
    double m_prime = 0.0;   // d m_k / d lambda
};

/// m_k(lambda) = I_k(s)/(s I_k'(s)); depends on |k| only.
double mode_weyl(int k, double lambda);

/// d m_k / d lambda from the Bessel-parameter derivative (independent of the
/// gamma-norm quadrature; the two agree through m_k' = g_k^2).
double mode_weyl_derivative(int k, double lambda);

/// g_k^2 = int_0^1 u_k(r)^2 r dr with u_k normalized to Gamma0 u_k = 1,
/// evaluated by graded Gauss quadrature of the Bessel integrand.
double mode_gamma_norm_sq(int k, double lambda);

/// Same quantity in closed form through the Bessel antiderivative bracket;
/// used by the mode sweeps (the quadrature path is its cross-check).
double mode_gamma_norm_sq_closed(int k, double lambda);

ModeOperator mode_operator(int k, double lambda);

/// Fourier-multiplier boundary parameter: the relation per mode is
/// (Gamma0, Gamma1) = (h, theta_k h) for Robin, (0, h) for Neumann (A0)
/// and (h, 0) for Dirichlet.
struct BoundaryMultiplier {
    enum class Kind { neumann, dirichlet, robin_const, robin_modes } kind = Kind::neumann;
    double value = 0.0;                 // robin_const
    std::vector<double> mode_values;    // robin_modes, indexed by |k|

    double theta(int k) const;
    bool self_adjoint() const { return true; }   // real multipliers only
    static BoundaryMultiplier neumann() { return {}; }
    static BoundaryMultiplier dirichlet();
    static BoundaryMultiplier robin(double theta_const);
    static BoundaryMultiplier robin_seq(std::vector<double> theta_k);
};

/// Scalar Krein-correction coefficient of the realization at one mode:
/// X (Y - m X)^{-1} for the mode relation.  Throws ModeCollisionError when
/// theta_k hits m_k(lambda).
double correction_coefficient(const BoundaryMultiplier& bc, int k, double m_value);

/// Singular values of the resolvent difference of the pair, all modes
/// |k| <= modes merged (multiplicity two for k >= 1), sorted descending:
/// per mode the correction is rank one with value g_k^2 |c_a - c_b|.
SingularSpectrum resdiff_svals(const BoundaryMultiplier& a, const BoundaryMultiplier& b,
                               double lambda, int modes, Exec exec = Exec::parallel);

/// Serial twin with identical per-mode arithmetic (reference for tests).
SingularSpectrum resdiff_svals_serial(const BoundaryMultiplier& a,
                                      const BoundaryMultiplier& b, double lambda,
                                      int modes);

struct DiskTrace {
    double lhs = 0.0;        // signed rank-one contributions from the g_k^2 route
    double rhs = 0.0;        // sum of m_k'(l) c_k from the Bessel-derivative route
    double defect = 0.0;
    double tail_bound = 0.0; // estimate of the dropped |k| > modes mass
};

DiskTrace trace_check_disk(const BoundaryMultiplier& bc, double lambda, int modes,
                           Exec exec = Exec::parallel);

/// Discrete radial triple for one mode: staggered grid on [h/2, 1] with the
/// r-weighted Gram, natural closure at the inner edge, trace/conormal maps at
/// r = 1.  Feeds the generic engine as an independent check of the closed
/// forms (engine weyl() matches mode_weyl to 1e-5 at n_grid = 512).
DiscreteTriple mode_triple(int k, int n_grid = 512);

/// Decay exponents of sorted {m_k} and {g_k} sequences (diagnostics for the
/// smoothing order of the Neumann-to-Dirichlet map and the gamma-field).
DecayFit weyl_sequence_fit(double lambda, int modes);
DecayFit gamma_sequence_fit(double lambda, int modes);

} // namespace disk
} // namespace qbt

#endif
