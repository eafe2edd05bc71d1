#pragma once

#include <stdexcept>
#include <string>

namespace idemsvd {

/// Operand dimensions are incompatible with the operation.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input lies outside the mathematical domain of the operation
/// (not idempotent, not Hermitian, invalid generator spec, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A post-condition residual exceeded its tolerance.
class ResidualError : public std::runtime_error {
public:
    ResidualError(const std::string& what, double residual, double tolerance)
        : std::runtime_error(what), residual_(residual), tolerance_(tolerance) {}

    double residual() const noexcept { return residual_; }
    double tolerance() const noexcept { return tolerance_; }

private:
    double residual_;
    double tolerance_;
};

/// The two independent computations of t disagree.
class CensusMismatch : public std::runtime_error {
public:
    CensusMismatch(const std::string& what, std::size_t t_threshold, std::size_t t_nullity)
        : std::runtime_error(what), t_threshold_(t_threshold), t_nullity_(t_nullity) {}

    std::size_t t_threshold() const noexcept { return t_threshold_; }
    std::size_t t_nullity() const noexcept { return t_nullity_; }

private:
    std::size_t t_threshold_;
    std::size_t t_nullity_;
};

/// Malformed matrix text or spec string.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace idemsvd
