#pragma once

#include <stdexcept>
#include <string>

namespace vexnorm {

/// Caller supplied an argument outside the documented range.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input lies outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A pointwise precondition on function data failed (e.g. p <= q at a sample).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A point lies below the depth a ladder-based construction resolves.
class ResolutionError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// A numerical procedure could not meet its tolerance within its budget.
/// Carries the best estimate reached and its error bound.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    explicit NumericError(const std::string& what)
        : NumericError(what, 0.0, 0.0) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

} // namespace vexnorm
