#ifndef QBT_DELTA_HPP
#define QBT_DELTA_HPP

#include <optional>
#include <vector>

#include "qbt/spectrum.hpp"
#include "qbt/triple.hpp"

namespace qbt {
namespace delta {

// -Laplace on R^2 with delta / delta' interactions on the unit circle Sigma,
// decomposed over Fourier modes.  Two interface triples per mode:
//
//   coupling triple ("delta"):  domain has continuous trace;
//       Gamma0 = sum of outward conormals, Gamma1 = trace;
//       ker Gamma0 = A_free, ker Gamma1 = A_D + A_D;
//       Weyl value  m_cont(l)  = I_k(s) K_k(s),            s = sqrt(-l)
//
//   jump triple ("delta'"):     domain has matched conormals;
//       Gamma0 = exterior conormal, Gamma1 = trace jump;
//       ker Gamma0 = A_N + A_N, ker Gamma1 = A_free;
//       Weyl value  m_jump(l)  = -1 / (s^2 I_k'(s) K_k'(s))
//
// Strengths follow the physics sign convention: the interaction is attractive
// (produces bound states) for alpha < 0 / beta < 0, i.e. the interface
// conditions read
//     sum of conormals = -alpha * trace          (delta)
//     trace jump       = -beta  * ext. conormal  (delta').

struct InterfaceMode {
    int k = 0;
    double lambda = -1.0;
    double m_cont = 0.0;     // continuous-trace (delta) Weyl value
    double m_jump = 0.0;     // jump (delta') Weyl value
    double g_cont_sq = 0.0;  // gamma-norm^2, interior + exterior parts
    double g_jump_sq = 0.0;
    double g_cont_interior = 0.0, g_cont_exterior = 0.0;
    double m_cont_prime = 0.0, m_jump_prime = 0.0;
};

InterfaceMode interface_mode(int k, double lambda);

/// Exterior part of the gamma-norm by quadrature truncated at radius R plus
/// the closed-form tail; changing R is a no-op to within exp(-2 s (R-1)).
double exterior_norm_quadrature(int k, double lambda, double radius);
double exterior_norm_closed(int k, double lambda);

enum class ReferenceOp { free_op, neumann_sum, dirichlet_sum };
enum class Interaction { delta, delta_prime };

struct PerModeResolvent {
    int k;
    double coefficient;      // scalar Krein-correction coefficient
    double g_sq;             // squared gamma-norm of the triple in play
};

/// Per-mode resolvent data of A_{delta,alpha}; collision (an eigenvalue at
/// lambda) raises ModeCollisionError naming the mode.
std::vector<PerModeResolvent> realize_delta(double alpha, double lambda, int modes);

/// Per-mode resolvent data of A_{delta',beta}; requires inf |beta| > 0.
std::vector<PerModeResolvent> realize_delta_prime(double beta, double lambda, int modes);

struct ChainPair {
    std::optional<Interaction> a;   // nullopt = A_free
    double strength = 0.0;
    ReferenceOp b = ReferenceOp::free_op;
};

ChainPair pair_delta_vs_free(double alpha);
ChainPair pair_delta_prime_vs_free(double beta);
ChainPair pair_delta_prime_vs_neumann(double beta);
ChainPair pair_free_vs_dirichlet();
ChainPair pair_free_vs_neumann();
ChainPair pair_delta_vs_dirichlet(double alpha);

struct ChainResult {
    SingularSpectrum spectrum;
    DecayFit fit;
};

/// Singular values of the resolvent difference for one pair of the chain
///   N+N --- delta' --- free --- delta --- D+D,
/// merged over modes |k| <= modes and fitted on the default window.
ChainResult chain_svals(const ChainPair& pair, double lambda, int modes,
                        Exec exec = Exec::parallel);
ChainResult chain_svals_serial(const ChainPair& pair, double lambda, int modes);

/// Lowest bound state of A_{delta,alpha} from the mode-0 secular equation
/// 1 + alpha m_cont(lambda) = 0; empty when no root exists below 0.
std::optional<double> delta_bound_state_mode0(double alpha);

/// Discrete interface triples for one mode (engine cross-checks).  The
/// exterior domain is truncated at `radius` with a natural closure; nodes are
/// graded geometrically outside the circle.
DiscreteTriple mode_triple_continuous(int k, int n_interior = 220, int n_exterior = 200,
                                      double radius = 12.0);
DiscreteTriple mode_triple_jump(int k, int n_interior = 220, int n_exterior = 200,
                                double radius = 12.0);

} // namespace delta
} // namespace qbt

#endif
