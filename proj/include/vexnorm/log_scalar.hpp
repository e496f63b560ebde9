#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <span>

namespace vexnorm {

/// A nonnegative real stored as its natural logarithm.
///
/// Quantities such as d_n = exp(-exp(n)) leave the double range long before
/// the constructions that use them stop making sense; keeping the logarithm
/// lets products, powers and sums stay exact in structure. A log value of
/// -infinity is the exact zero.
class LogScalar {
public:
    constexpr LogScalar() = default;

    static constexpr LogScalar from_log(double log_value) { return LogScalar(log_value); }
    static LogScalar from_value(double value);
    static constexpr LogScalar zero() { return LogScalar(); }
    static constexpr LogScalar one() { return LogScalar(0.0); }

    constexpr double log() const { return log_; }
    double value() const { return std::exp(log_); }
    constexpr bool is_zero() const { return log_ == -std::numeric_limits<double>::infinity(); }

    LogScalar pow(double exponent) const;

    /// Difference *this - other; requires other <= *this.
    LogScalar minus(LogScalar other) const;

    friend LogScalar operator*(LogScalar x, LogScalar y);
    friend LogScalar operator/(LogScalar x, LogScalar y);
    friend LogScalar operator+(LogScalar x, LogScalar y);

    LogScalar& operator*=(LogScalar other) { return *this = *this * other; }
    LogScalar& operator+=(LogScalar other) { return *this = *this + other; }

    friend constexpr bool operator==(LogScalar x, LogScalar y) { return x.log_ == y.log_; }
    friend constexpr std::partial_ordering operator<=>(LogScalar x, LogScalar y) {
        return x.log_ <=> y.log_;
    }

private:
    constexpr explicit LogScalar(double log_value) : log_(log_value) {}

    double log_ = -std::numeric_limits<double>::infinity();
};

/// Stable log-sum-exp over a sequence.
LogScalar sum(std::span<const LogScalar> terms);

LogScalar min(LogScalar x, LogScalar y);

/// |x/y - 1|, computed from the log values without forming x or y.
double relative_difference(LogScalar x, LogScalar y);

} // namespace vexnorm
