#pragma once

#include <cstddef>
#include <optional>

namespace idemsvd {

/// Tolerance set shared by the structured decompositions and the CLI.
/// Unset optionals resolve to size-dependent defaults.
struct Tolerances {
    /// Gate on ||m^2 - m||_F / max(1, ||m||_F) (and the involutory analogue).
    double idem = 1e-10;
    /// Half-width of the band |sigma - 1| <= count that holds the unit
    /// singular values. Default max(1e-8, 50 n macheps).
    std::optional<double> count;
    /// sigma <= zero counts as a zero singular value. Default n macheps sigma_1.
    std::optional<double> zero;
    /// Pivoted-QR rank threshold on |r_jj|. Default n macheps |r_11|.
    std::optional<double> rank;
    /// Multiplier applied to residual tolerances (reconstruction, Schur,
    /// r1 q1 = I, completion orthonormality). Raised above 1 only for
    /// knowingly ill-conditioned inputs.
    double relax = 1.0;

    double count_for(std::size_t n) const;
    double zero_for(std::size_t n, double sigma1) const;
    /// 1e-9 max(1, norm) relax.
    double reconstruction_for(double norm) const;
};

}  // namespace idemsvd
