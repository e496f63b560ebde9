#pragma once

#include <cstddef>
#include <vector>

#include "vexnorm/function.hpp"

namespace vexnorm {

/// Finite family of intervals standing in for "all intervals".
///
/// Dyadic intervals down to dyadic_depth, plus, around every declared
/// structure point t of the scanned function:
///   [t, t + ratio^j] and [t - ratio^j, t] for j <= graded_levels,
///   the same with lengths measured relative to the gap to the next point,
///   two-sided spans [t - gl ratio^i, t + gr ratio^j] for i, j <= span_levels,
///   and [s, t] for every pair of structure points.
/// Graded intervals are written in the frame of t, so they resolve scales
/// far below ulp(t).
struct ScanConfig {
    int dyadic_depth = 14;
    int graded_levels = 40;
    double ratio = 0.25;
    int span_levels = 6;
    bool gap_relative = true;
    double tol = 1e-10;
};

std::vector<Interval> scan_intervals(const RealFunction& f, const ScanConfig& scan = {});

struct OscillationSample {
    Interval q;
    double mean = 0.0;
    double essinf = 0.0;
    /// Average of |f - f_Q| over Q; NaN unless requested.
    double mean_oscillation = 0.0;
    double log_length() const { return q.measure().log(); }
    double blo() const { return mean > essinf ? mean - essinf : 0.0; }
};

std::vector<OscillationSample> scan_oscillation(const RealFunction& f, const ScanConfig& scan = {},
                                                bool with_mean_oscillation = false);

/// gamma(f, r): sup of the mean oscillation over scanned Q with |Q| <= r.
double bmo_modulus(const RealFunction& f, double r, const ScanConfig& scan = {});
/// eta(f, r): sup of f_Q - essinf_Q f over scanned Q with |Q| <= r.
double blo_modulus(const RealFunction& f, double r, const ScanConfig& scan = {});

/// ln(e + 1/|Q|) from ln|Q|.
double log_weight(double log_length);

struct LogCoefficient {
    double value = 0.0;
    Interval witness{0.0, 1.0};
    std::size_t intervals = 0;
};

/// sup over scanned Q of (f_Q - essinf_Q f) ln(e + 1/|Q|).
LogCoefficient blo_log_coefficient(const RealFunction& f, const ScanConfig& scan = {});
LogCoefficient blo_log_coefficient(const std::vector<OscillationSample>& samples);

struct OscillationProfile {
    std::vector<double> r;
    std::vector<double> gamma;
    std::vector<double> eta;
    /// gamma(f, r) ln(e + 1/r), whose decay is the vanishing-oscillation signature.
    std::vector<double> gamma_log;
    std::vector<double> eta_log;
};

OscillationProfile oscillation_profile(const std::vector<OscillationSample>& samples, const std::vector<double>& radii);
OscillationProfile oscillation_profile(const RealFunction& f, const std::vector<double>& radii,
                                       const ScanConfig& scan = {});

struct MeanBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

/// Average of ln ln(1/x) over [a, b] minus ln ln(1/b), against 4 / ln(e + 1/(b - a)).
MeanBound verify_mean_bound(double a, double b, double tol = 1e-12);

} // namespace vexnorm
