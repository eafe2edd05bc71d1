#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "idemsvd/idempotent.hpp"
#include "idemsvd/matrix.hpp"
#include "idemsvd/tolerances.hpp"

namespace idemsvd {

/// Column j of the matrix is signs[j] * e_{perm.map[j]}.
struct SignedPermutation {
    Permutation perm;
    std::vector<int> signs;

    Matrix to_matrix() const;
};

/// B = u diag(sigma) v^H for an involutory B = sign (2 M - I).
///
/// sigma is non-increasing. The nu paired values are tan(phi_j) and
/// cot(phi_j) with phi_j = (pi/2 + psi_j) / 2; the remaining n - 2 nu are 1.
struct InvolutorySVD {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
    std::vector<double> phi;  ///< length nu
    /// (j, k) positions in sigma with sigma_j sigma_k = 1, j holding the larger value.
    std::vector<std::pair<std::size_t, std::size_t>> pairing;
    CountProfile counts;  ///< of the underlying idempotent
    int sign = 1;

    /// Factors before sorting: diag(tan phi, 1, cot phi) ordering, with
    /// v_canonical = u_canonical * tn.
    Matrix u_canonical;
    Matrix v_canonical;
    std::vector<double> sigma_canonical;
    SignedPermutation tn;

    double residual = 0.0;  ///< ||B - u diag(sigma) v^H||_F
};

struct PairingReport {
    std::size_t pairs = 0;
    std::size_t unit_pairs = 0;
    std::size_t unpaired_units = 0;
    double max_product_error = 0.0;   ///< over the pairing map
    double max_reciprocal_error = 0.0;  ///< |sigma_i sigma_{n-1-i} - 1| over the sorted sequence
    bool products_ok = false;
    bool unit_pairs_ok = false;
    bool unpaired_ok = false;
    bool reciprocal_closed = false;

    bool passed() const { return products_ok && unit_pairs_ok && unpaired_ok && reciprocal_closed; }
};

/// ||b^2 - I||_F / max(1, ||b||_F).
double validate_involutory(const Matrix& b);
bool is_involutory(const Matrix& b, double tol = 1e-10);

/// (sign b + I) / 2, checked for idempotency.
Matrix idempotent_from_involutory(const Matrix& b, int sign = 1, const Tolerances& tol = {});

InvolutorySVD involutory_svd(const Matrix& b, int sign = 1, const Tolerances& tol = {});

PairingReport pairing_check(const InvolutorySVD& isvd, const Tolerances& tol = {});

/// ||v_canonical - u_canonical tn||_F.
double tn_relation_check(const InvolutorySVD& isvd);

}  // namespace idemsvd
