#ifndef QBT_TRIPLE_HPP
#define QBT_TRIPLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "qbt/linalg.hpp"
#include "qbt/matrix.hpp"
#include "qbt/types.hpp"

namespace qbt {

// ---------------------------------------------------------------------------
// DiscreteTriple: a matrix model of a boundary triple {G, Gamma0, Gamma1}.
//
// Fields follow the continuum objects: T_act is the discrete maximal
// operator, W and W_b are the Gram matrices of the interior and boundary
// spaces, G0/G1 the conormal and trace maps, R_int selects the rows carrying
// the differential equation.  The abstract Green identity
//     W T - T* W = G0* W_b G1 - G1* W_b G0
// holds exactly (up to roundoff) for every shipped triple; equivalently
// K = W T + G1* W_b G0 is Hermitian.  All spectral computations run through
// this "stiffness" form:
//
//     gamma(l)        = (K - l W)^{-1} G1* W_b
//     M(l)            = G1 gamma(l)
//     (A0 - l)^{-1}   = (K - l W)^{-1} W          (A0 = ker Gamma0)
//     gamma(lbar)^*   = G1 (K - l W)^{-1} W
//
// With these, the Weyl/Krein/trace identities of the continuum theory hold as
// exact matrix identities, independent of the mesh width; mesh width only
// controls how close the triple is to its continuum target.
//
// The columns of gamma(l) satisfy the interior rows of (T_act - l) f = 0
// exactly.  Their raw conormal data G0 f reproduces the prescribed boundary
// data up to the one-sided-difference consistency error O(h^2); the triple's
// own boundary map (which carries the variational flux correction) reproduces
// it exactly.
struct DiscreteTriple {
    int n = 0;                     // interior dimension N
    int m = 0;                     // boundary dimension
    Matrix t_act;                  // N x N
    std::vector<int> interior_rows;// "equation" rows (complement of boundary nodes)
    std::vector<int> boundary_nodes;
    std::vector<double> w;         // diagonal of the interior Gram (positive)
    Matrix w_b;                    // m x m boundary Gram (HPD)
    Matrix g0;                     // m x N conormal map
    Matrix g1;                     // m x N trace map (supported on boundary_nodes)
    Matrix k_sym;                  // W T + G1* W_b G0, Hermitian

    std::string label;

    Matrix gram() const;           // diag(w) as a matrix

    /// max-norm residual of the Green matrix identity.
    double green_residual() const;

    /// Validation of the type invariants: Green residual below
    /// 1e-12 (1 + ||T||_max), stacked [G0; G1] of full rank 2m, and the
    /// constrained system {interior rows of (T - l), G0} solvable at l = -1.
    void validate() const;
};

/// Assemble from variational data: Hermitian k_sym, positive diagonal Gram,
/// trace map supported on boundary_nodes, conormal map, boundary Gram.
/// T_act is derived as W^{-1}(k_sym - G1* W_b G0).
DiscreteTriple make_triple(Matrix k_sym, std::vector<double> w, Matrix w_b,
                           Matrix g0, Matrix g1, std::vector<int> boundary_nodes,
                           std::string label);

/// Assemble directly from the raw fields (deserialization path);
/// k_sym is reconstructed and the Green identity validated.
DiscreteTriple make_triple_from_fields(Matrix t_act, std::vector<double> w,
                                       Matrix w_b, Matrix g0, Matrix g1,
                                       std::vector<int> boundary_nodes,
                                       std::string label);

// ---------------------------------------------------------------------------
// BoundaryParameter: a linear relation Theta = { (X h, Y h) : h in C^d } in
// the boundary space.  Operators B enter as (X, Y) = (I, B), inverses B^{-1}
// as (B, I), and ker Gamma0 corresponds to the purely multivalued relation
// (0, I).

enum class RelationKind { operator_graph, inverse_operator, pure_multivalued, general };

struct BoundaryParameter {
    Matrix x;   // m x d
    Matrix y;   // m x d
    RelationKind kind = RelationKind::general;

    int m() const { return static_cast<int>(x.rows()); }
    int d() const { return static_cast<int>(x.cols()); }

    static BoundaryParameter from_operator(const Matrix& b);        // Theta = B
    static BoundaryParameter from_inverse(const Matrix& b);         // Theta = B^{-1}
    static BoundaryParameter pure_multivalued(int m);               // Theta = 0^{-1}
    static BoundaryParameter zero_operator(int m);                  // Theta = 0
    static BoundaryParameter general(Matrix x, Matrix y);

    /// rank [X; Y] = d (faithful parametrization).
    bool faithful(double tol = 1e-10) const;
    /// X* W_b Y = Y* W_b X with d = m.
    bool self_adjoint(const Matrix& w_b, double tol = 1e-10) const;
    /// Im(Y* W_b X) >= 0 on C^d (accumulative: <= 0).
    bool dissipative(const Matrix& w_b, double tol = 1e-10) const;
    bool accumulative(const Matrix& w_b, double tol = 1e-10) const;

    /// Smallest singular value of the operator part (the sigma_ess(Theta)
    /// surrogate used by the self-adjointness diagnostics).
    double operator_part_gap(const Matrix& w_b) const;
};

// ---------------------------------------------------------------------------
// Weyl data at one spectral point.

struct WeylSample {
    cx lambda;
    Matrix gamma;                 // N x m
    Matrix m_matrix;              // m x m
    std::optional<Matrix> m_prime;
};

// ---------------------------------------------------------------------------
// Engine operations.

double green_residual(const DiscreteTriple& t);

/// Columns solve the homogeneous interior equations with prescribed
/// Gamma0 data.  Throws NearEigenvalueError when l is within resolution of
/// an eigenvalue of the A0 realization.
Matrix gamma_field(const DiscreteTriple& t, cx lambda);

WeylSample weyl(const DiscreteTriple& t, cx lambda);

/// M'(l) = gamma(lbar)* gamma(l); matches central differences to 1e-6.
Matrix weyl_derivative(const DiscreteTriple& t, cx lambda);

/// Resolvent of the reference realization A0 = ker Gamma0.
Matrix a0_resolvent(const DiscreteTriple& t, cx lambda);

/// Eigenvalues of A0 (the Hermitian pencil (K, W)).
std::vector<double> a0_eigenvalues(const DiscreteTriple& t);

/// gamma(lbar)^* as an m x N matrix (the W, W_b adjoint).
Matrix gamma_star(const DiscreteTriple& t, cx lambda);

/// Realization A_Theta compressed to its operator part: a matrix pencil
/// (reduced, gram) on the constrained subspace spanned by `basis` columns.
struct Realization {
    Matrix reduced;    // action on the constrained coordinates
    Matrix gram;       // reduced Gram (HPD)
    Matrix basis;      // N x dim, W-orthonormal columns spanning the domain
    bool sa_check = false;

    std::vector<double> eigenvalues_sym() const;   // Hermitian pencil path
    std::vector<cx> eigenvalues_general() const;   // complex QR path
};

Realization realize(const DiscreteTriple& t, const BoundaryParameter& theta);

/// Krein resolvent: (A0-l)^{-1} + gamma(l) X (Y - M(l) X)^{-1} gamma(lbar)^*.
/// Throws ModeCollisionError-like Error when Y - M(l)X is not invertible
/// (l is then an eigenvalue candidate of A_Theta).
Matrix krein_resolvent(const DiscreteTriple& t, const BoundaryParameter& theta,
                       cx lambda);

/// Resolvent of A_Theta by direct solve of the coupled (N + d) system;
/// independent of the Krein path, used as its cross-check.
Matrix direct_resolvent(const DiscreteTriple& t, const BoundaryParameter& theta,
                        cx lambda);

/// Real eigenvalues of A_Theta inside [a, b] c rho(A0), located as roots of
/// det(Y - M(l) X) by scanning + bisection.  Throws IntervalSplitError when
/// A0 spectrum intrudes.
std::vector<double> eigenvalues_via_weyl(const DiscreteTriple& t,
                                         const BoundaryParameter& theta,
                                         double a, double b, double tol,
                                         int scan_points = 400);

struct TraceCheck {
    cx lhs;       // tr((A_Theta - l)^{-1} - (A0 - l)^{-1}), direct route
    cx rhs;       // tr(M'(l) X (Y - M(l) X)^{-1})
    double defect;
};

TraceCheck trace_formula_check(const DiscreteTriple& t, const BoundaryParameter& theta,
                               cx lambda);

/// Smallest eigenvalue of Im M(l) / Im l (w.r.t. the boundary Gram).
double nevanlinna_check(const DiscreteTriple& t, cx lambda);

struct DissipativityReport {
    bool theta_dissipative = false;
    bool theta_accumulative = false;
    double min_form_imag = 0.0;     // min eig of the realization's imaginary form
    std::vector<cx> eigenvalues;    // computed spectrum of the realization
    double min_imag = 0.0;          // min Im over computed eigenvalues
    double krein_defect = 0.0;      // Krein vs direct at a half-plane point
};

DissipativityReport dissipativity_check(const DiscreteTriple& t,
                                        const BoundaryParameter& theta, cx lambda);

/// Synthetic random triple for engine tests: dimension n, boundary dim m.
DiscreteTriple synthetic_triple(int n, int m, std::uint64_t seed);

} // namespace qbt

#endif
