#ifndef QBT_LINALG_HPP
#define QBT_LINALG_HPP

#include <utility>
#include <vector>

#include "qbt/matrix.hpp"
#include "qbt/parallel.hpp"
#include "qbt/types.hpp"

namespace qbt {

// ---------------------------------------------------------------------------
// LU factorization with partial pivoting.

struct Lu {
    Matrix lu;                 // packed factors
    std::vector<int> piv;      // row permutation
    int sign = 1;

    std::size_t n() const { return lu.rows(); }
    Matrix solve(const Matrix& b) const;
    std::vector<cx> solve_vec(const std::vector<cx>& b) const;
    Matrix solve_adjoint(const Matrix& b) const;   // solves A* X = B
    cx log_abs_det() const;                        // log|det A| (real part), arg in imag
};

Lu lu_factor(const Matrix& a);

/// 1-norm condition estimate (Hager-style), built on an existing factorization.
double cond_1_estimate(const Matrix& a, const Lu& f);

/// Solve A X = B.  Rejects condition estimates above `cond_limit`.
Matrix solve(const Matrix& a, const Matrix& b, double cond_limit = 1e12);

// ---------------------------------------------------------------------------
// Hermitian eigenvalue problem (cyclic Jacobi).
//
// The parallel variant applies rotation rounds over disjoint index pairs
// (round-robin ordering): row phase then column phase, each phase
// conflict-free.  The serial variant is the classical cyclic sweep and is the
// reference implementation used by the tests.

struct HermEig {
    std::vector<double> values;   // ascending
    Matrix vectors;               // columns; unitary
};

HermEig hermitian_eig(const Matrix& a, Exec exec = Exec::parallel);

/// Generalized Hermitian pencil A x = lambda B x with B positive definite.
HermEig hermitian_pencil_eig(const Matrix& a, const Matrix& b,
                             Exec exec = Exec::parallel);

// ---------------------------------------------------------------------------
// Singular value decomposition (one-sided Jacobi on columns).
//
// Orthogonalizes column pairs directly, never forming A*A, so small singular
// values keep absolute accuracy near 1e-12.  Parallel variant runs round-robin
// rounds of disjoint column pairs.

struct Svd {
    std::vector<double> values;   // descending
    Matrix u;                     // rows(A) x k
    Matrix v;                     // cols(A) x k, A = U diag(s) V*
};

Svd svd(const Matrix& a, Exec exec = Exec::parallel);

/// Singular values only, descending.
std::vector<double> singular_values(const Matrix& a, Exec exec = Exec::parallel);

// ---------------------------------------------------------------------------
// General complex eigenvalues (Hessenberg reduction + shifted QR).
// Eigenvalues only; used for non-self-adjoint realizations.

std::vector<cx> eigenvalues(const Matrix& a, int max_iter_per_eig = 80);

// ---------------------------------------------------------------------------
// Subspace helpers.

/// Cholesky factor L of a Hermitian positive definite matrix, A = L L*.
Matrix cholesky(const Matrix& a);

/// Orthonormal basis of ker(C) for a wide constraint matrix C (c x n, c small).
/// Rank decisions use `tol` relative to the largest row norm.
Matrix kernel_basis(const Matrix& c, double tol = 1e-12);

/// Orthonormal basis of ran(A) (columns), same tolerance convention.
Matrix range_basis(const Matrix& a, double tol = 1e-12);

} // namespace qbt

#endif
