#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "idemsvd/generators.hpp"
#include "idemsvd/matrix.hpp"
#include "idemsvd/tolerances.hpp"

namespace idemsvd {

/// One invariant: measured value against its limit. Residuals are relative
/// to max(1, ||input||_F) unless the name says otherwise.
struct Check {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool pass = false;
    std::string note;
};

struct VerifyReport {
    std::string kind;  ///< "idempotent" or "involutory"
    std::vector<Check> checks;

    bool passed() const;
    /// nullptr when absent.
    const Check* find(std::string_view name) const;
};

/// Full invariant suite for an idempotent matrix. Throws DomainError when
/// the input fails the idempotency gate; any later failure (census mismatch,
/// residual errors) is recorded as a failing "decomposition" check. With
/// `truth`, the census and angles are also compared against it.
VerifyReport verify_idempotent(const Matrix& m, const Tolerances& tol = {}, const GeneratedMatrix* truth = nullptr);

/// Same for an involutory matrix b = sign (2 M - I).
VerifyReport verify_involutory(const Matrix& b, int sign = 1, const Tolerances& tol = {},
                               const GeneratedMatrix* truth = nullptr);

enum class MatrixKind { idempotent, involutory };

struct SweepCase {
    GeneratorSpec spec;
    VerifyReport report;
};

/// Verifies `count` generated matrices with specs random_spec(n_min, n_max,
/// seed + k), k = 0..count-1, in that order.
std::vector<SweepCase> run_sweep(MatrixKind kind, std::size_t n_min, std::size_t n_max, std::size_t count,
                                 std::uint64_t seed, const Tolerances& tol = {});

}  // namespace idemsvd
