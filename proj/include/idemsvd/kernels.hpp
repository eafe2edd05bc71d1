#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "idemsvd/matrix.hpp"

namespace idemsvd {

/// Rank-revealing factorization P^T a P = q [r1; 0].
///
/// P comes from Householder QR with column pivoting on `a` itself. Since
/// a P = Q_a R implies P^T a P = (P^T Q_a) R, the factor for the
/// symmetrically permuted matrix is q = P^T Q_a with the same triangular
/// factor, so the first `rank` columns of P^T a P are independent and the
/// diagonal of r1 is non-increasing in modulus. Diagonal entries of r1 are
/// made real and positive by absorbing their phases into q.
struct PivotedQR {
    Matrix q;                 ///< n x n unitary
    Matrix r1;                ///< rank x n upper trapezoidal
    Permutation perm;
    std::size_t rank = 0;
    std::vector<double> diagonal;  ///< |r_jj| for the full n x n triangular factor
    double rank_tol = 0.0;         ///< threshold actually used
    /// False when the leading `rank` diagonal moduli are not non-increasing.
    /// Reported as a warning only; the pipeline relies on r1 q1 = I alone.
    bool monotone_diagonal = true;
};

PivotedQR qr_column_pivoted(const Matrix& a, std::optional<double> rank_tol = std::nullopt);

/// Orthonormal basis of range(a): the first `rank` columns of P q.
Matrix range_basis(const Matrix& a, std::optional<double> rank_tol = std::nullopt);

struct HouseholderQR {
    Matrix q;  ///< m x m unitary
    Matrix r;  ///< m x n upper trapezoidal
};

/// Unpivoted Householder QR of an m x n matrix.
HouseholderQR qr_householder(const Matrix& a);

struct HermitianEig {
    Matrix vectors;              ///< unitary, column j pairs with values[j]
    std::vector<double> values;  ///< non-increasing
    std::size_t sweeps = 0;
};

/// Cyclic complex Jacobi. Input must be Hermitian to 1e-10 relative in
/// Frobenius norm (DomainError otherwise); it is symmetrized before use.
HermitianEig hermitian_eig(const Matrix& a);

struct OracleSVD {
    Matrix u;                   ///< m x m unitary
    std::vector<double> sigma;  ///< min(m, n) values, non-increasing
    Matrix v;                   ///< n x n unitary
};

/// One-sided (Hestenes) Jacobi SVD. Deterministic for a fixed input and
/// independent of every other factorization in this library except the
/// Householder completion used to fill left singular vectors of zero
/// singular values.
OracleSVD svd_oracle(const Matrix& a);

/// Extends n x k orthonormal columns to an n x n unitary; returns the
/// n x (n - k) extension. Householder based and deterministic. Columns must
/// satisfy ||cols^H cols - I||_F <= tol, else DomainError.
Matrix orthonormal_completion(const Matrix& cols, double tol = 1e-10);

/// Right singular vectors of `a` whose singular values are <= tol
/// (default n * macheps * sigma_1).
Matrix nullspace_basis(const Matrix& a, std::optional<double> tol = std::nullopt);

/// Principal angles (radians, non-increasing) between range(p) and range(q),
/// both given by orthonormal columns. Angles whose cosine exceeds 1/sqrt(2)
/// are taken from the sines (singular values of q - p p^H q) so that small
/// angles keep full absolute accuracy; the rest from the cosines
/// (singular values of p^H q, clamped to [0, 1]).
std::vector<double> subspace_angles(const Matrix& p, const Matrix& q);

}  // namespace idemsvd
