#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idemsvd/idempotent.hpp"
#include "idemsvd/matrix.hpp"
#include "idemsvd/tolerances.hpp"
#include "idemsvd/verify.hpp"

namespace idemsvd {

/// Everything `analyze` prints. Sequences are empty when the decomposition
/// itself failed; the residual block and checks are always filled.
struct AnalysisReport {
    std::string mode;  ///< "idempotent" or "involutory"
    int sign = 1;      ///< involutory mode only
    Matrix input;
    double idempotency_residual = 0.0;
    double involution_residual = 0.0;

    std::optional<CountProfile> counts;
    std::vector<double> sigma;
    std::vector<double> psi;  ///< radians, length r
    std::vector<double> tau;
    std::vector<double> phi;  ///< involutory mode, radians, length nu
    std::vector<std::pair<double, double>> pairs;
    std::vector<std::pair<std::size_t, std::size_t>> pair_indices;

    /// Named residuals (reconstruction, schur, coupling, oracle_gap, ...).
    std::vector<std::pair<std::string, double>> residuals;
    std::vector<Check> checks;
    std::string error;  ///< message when the decomposition threw

    double tol_idem = 0.0;
    double tol_count = 0.0;
    double tol_zero = 0.0;
    double rank_tol = 0.0;
    double elapsed_ms = 0.0;

    bool passed() const;
};

/// Builds the report for an input already known to pass the gate of `mode`.
AnalysisReport analyze_idempotent(const Matrix& m, const Tolerances& tol = {});
AnalysisReport analyze_involutory(const Matrix& b, int sign = 1, const Tolerances& tol = {});

/// Fixed notation with 8 decimals, trailing zeros removed ("1.41421356", "0", "45").
std::string format_fixed(double x);

/// key: value lines for humans.
std::string render_text(const AnalysisReport& rep);
/// Flat JSON object with snake_case keys; doubles round-trip exactly.
std::string render_json(const AnalysisReport& rep);

}  // namespace idemsvd
