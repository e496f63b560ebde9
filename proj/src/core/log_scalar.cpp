#include "vexnorm/log_scalar.hpp"

#include <algorithm>

#include "vexnorm/errors.hpp"

namespace vexnorm {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogScalar LogScalar::from_value(double value) {
    if (!(value >= 0.0)) throw DomainError("LogScalar::from_value: negative or NaN value");
    return LogScalar(value == 0.0 ? kNegInf : std::log(value));
}

LogScalar LogScalar::pow(double exponent) const {
    if (is_zero()) {
        if (exponent > 0.0) return zero();
        if (exponent == 0.0) return one();
        throw DomainError("LogScalar::pow: zero to a negative power");
    }
    return LogScalar(log_ * exponent);
}

LogScalar LogScalar::minus(LogScalar other) const {
    if (other.is_zero()) return *this;
    if (other.log_ > log_) {
        // Tolerate a difference at the rounding level of the inputs.
        if (other.log_ - log_ <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(log_)))
            return zero();
        throw DomainError("LogScalar::minus: result would be negative");
    }
    if (other.log_ == log_) return zero();
    return LogScalar(log_ + std::log1p(-std::exp(other.log_ - log_)));
}

LogScalar operator*(LogScalar x, LogScalar y) {
    if (x.is_zero() || y.is_zero()) return LogScalar::zero();
    return LogScalar(x.log_ + y.log_);
}

LogScalar operator/(LogScalar x, LogScalar y) {
    if (y.is_zero()) throw DomainError("LogScalar: division by zero");
    if (x.is_zero()) return LogScalar::zero();
    return LogScalar(x.log_ - y.log_);
}

LogScalar operator+(LogScalar x, LogScalar y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    double hi = std::max(x.log_, y.log_);
    double lo = std::min(x.log_, y.log_);
    return LogScalar(hi + std::log1p(std::exp(lo - hi)));
}

LogScalar sum(std::span<const LogScalar> terms) {
    double hi = kNegInf;
    for (auto t : terms) hi = std::max(hi, t.log());
    if (hi == kNegInf) return LogScalar::zero();
    double acc = 0.0;
    for (auto t : terms) acc += std::exp(t.log() - hi);
    return LogScalar::from_log(hi + std::log(acc));
}

LogScalar min(LogScalar x, LogScalar y) { return x < y ? x : y; }

double relative_difference(LogScalar x, LogScalar y) {
    if (x.is_zero() && y.is_zero()) return 0.0;
    if (y.is_zero()) return std::numeric_limits<double>::infinity();
    if (x.is_zero()) return 1.0;
    return std::abs(std::expm1(x.log() - y.log()));
}

} // namespace vexnorm
