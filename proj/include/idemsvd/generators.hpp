#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "idemsvd/idempotent.hpp"
#include "idemsvd/matrix.hpp"

namespace idemsvd {

/// Prescription (n, r, t, psi, seed) for a synthesized idempotent matrix.
/// Serialized as "n:r:t:psi1,psi2,...:seed".
struct GeneratorSpec {
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t t = 0;
    std::vector<double> psi;  ///< length t, radians, non-increasing, inside (0, pi/2)
    std::uint64_t seed = 0;

    /// Throws DomainError on an inconsistent spec, including psi within
    /// 1e-12 of pi/2.
    void validate() const;
    /// Two or more psi coincide to within 1e-12.
    bool degenerate() const;

    static GeneratorSpec parse(std::string_view text);
    /// psi printed in shortest round-trip form.
    std::string to_string() const;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Spec with n uniform in [n_min, n_max], r uniform in [0, n], t uniform in
/// [0, min(r, n - r)] and angles uniform in [psi_lo, psi_hi], sorted
/// non-increasing. Everything, including the matrix seed, derives from `seed`.
GeneratorSpec random_spec(std::size_t n_min, std::size_t n_max, std::uint64_t seed, double psi_lo = 1e-3,
                          double psi_hi = std::numbers::pi / 2 - 1e-3);

/// Matrix together with the census and angles it was built from.
struct GeneratedMatrix {
    Matrix matrix;
    CountProfile counts;
    AngleSpectrum angles;  ///< length r, psi padded with zeros
    bool degenerate = false;
};

/// Haar-distributed unitary: QR of a complex standard Gaussian matrix with
/// the phases of diag(R) moved into Q. Randomness is std::mt19937_64 seeded
/// with `seed`; each Gaussian pair is produced by Box-Muller from two 53-bit
/// uniforms u = ((x >> 11) + 0.5) / 2^53, entries drawn row-major, real part
/// first.
Matrix haar_unitary(std::size_t n, std::uint64_t seed);

/// M = U N U^H with N the condensed form for (n, r, t, psi) and U = haar_unitary(n, seed).
GeneratedMatrix idempotent_from_spec(const GeneratorSpec& spec);

/// sign (2 M - I) for M = idempotent_from_spec(spec). Census and angles are
/// those of the underlying idempotent.
GeneratedMatrix involutory_from_spec(const GeneratorSpec& spec, int sign = 1);

}  // namespace idemsvd
