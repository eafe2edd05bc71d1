#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "idemsvd/matrix.hpp"
#include "idemsvd/tolerances.hpp"

namespace idemsvd {

/// Singular-value census of an idempotent matrix: r ones-or-larger, of
/// which t strictly larger than one, and s = n - r zeros.
struct CountProfile {
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t s = 0;
    std::size_t t = 0;
    std::size_t nu = 0;  ///< min(r, s)

    friend bool operator==(const CountProfile&, const CountProfile&) = default;
};

/// Angles psi_1 >= ... >= psi_t > psi_{t+1} = ... = psi_r = 0 (radians)
/// between the left and right singular vectors of the nonzero singular values.
struct AngleSpectrum {
    std::vector<double> psi;
};

/// M = u diag(sigma) v^H with sigma_j = 1 / cos(psi_j) for j < r.
///
/// Column layout of v: v_1..v_r are the right singular vectors of the
/// nonzero singular values, phase-fixed so that u_j^H v_j = 1 / sigma_j;
/// v_{r+1}..v_{n-t} span null(M) and null(M^H) jointly; the last t columns
/// are sin(psi_j) u_j - cos(psi_j) y_j, which keeps v = schur_u O with O in
/// the block form [C 0 S; 0 I 0; S 0 -C].
struct StructuredSVD {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
    CountProfile counts;
    AngleSpectrum angles;
    /// tan(psi_j) for j < t, the nonzero singular values of x.
    std::vector<double> tau;
    /// X = R1 Q2, the r x s coupling block of the similarity q^H A q.
    Matrix x;
    /// ||R1 Q1 - I_r||_F.
    double r1q1_defect = 0.0;
    /// max_j |lambda_j(X X^H + I) - (1 + tau_j^2)| / lambda_1, the
    /// eigensolver cross-check of the tangents.
    double eig_consistency = 0.0;
    /// Diagonal of the pivoted triangular factor lost monotonicity (warning).
    bool qr_monotone_warning = false;
};

/// Real condensed form N with M = schur_u N schur_u^H.
struct CanonicalForm {
    Matrix n_matrix;
    Matrix schur_u;
    std::vector<double> tau;
    /// ||M schur_u - schur_u N||_F.
    double residual = 0.0;
};

/// O = schur_u^H v and the recovered sign matrix E (entries +-1).
struct Coupling {
    Matrix o;
    std::vector<int> e;
    /// Some psi_j lie within the separation threshold of each other; the
    /// block-pattern assertion was skipped.
    bool degenerate = false;
    /// Largest entrywise deviation from the expected pattern (computed even
    /// when degenerate).
    double pattern_residual = 0.0;
};

/// ||m^2 - m||_F / max(1, ||m||_F).
double validate_idempotent(const Matrix& m);
bool is_idempotent(const Matrix& m, double tol = 1e-10);

/// Builds N = [I_t 0 0 T; 0 I_{r-t} 0 0; 0 0 0_{s-t} 0; 0 0 0 0_t], T = diag(tau).
Matrix canonical_n(std::size_t n, std::size_t r, std::span<const double> tau);

/// r from the pivoted-QR rank, t = r - dim null(I - m m^H).
CountProfile count_profile(const Matrix& m, const Tolerances& tol = {});

StructuredSVD structured_svd_idempotent(const Matrix& m, const Tolerances& tol = {});

CanonicalForm canonical_form(const Matrix& m, const Tolerances& tol = {});
/// Same, reusing an already computed structured SVD of m.
CanonicalForm canonical_form(const Matrix& m, const StructuredSVD& ssvd, const Tolerances& tol = {});

Coupling coupling_matrix(const StructuredSVD& ssvd, const CanonicalForm& cf, double angle_sep = 1e-6);

/// Principal angles between range(m) and range(m^H) from independent
/// orthonormal bases, non-increasing, length rank(m).
std::vector<double> principal_angles(const Matrix& m, const Tolerances& tol = {});

}  // namespace idemsvd
