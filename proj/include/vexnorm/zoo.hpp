#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "vexnorm/function.hpp"

namespace vexnorm {

/// Deepest level whose ladder points and level-set offsets are all normal doubles.
inline constexpr int kMaxRepresentableLevel = 6;

/// ln d_n = -e^n.
inline double log_d(int n) { return -std::exp(static_cast<double>(n)); }
/// e^{-e^{s}} as a LogScalar, for real s.
inline LogScalar double_exp(double s) { return LogScalar::from_log(-std::exp(s)); }

/// d_n = e^{-e^n} and the breakpoints c_m of the sawtooth.
///
/// Each c_m is kept as an integer combination of the d_j, produced by
/// running the defining recurrence c_0 = 2/e, c_{2n+1} = c_{2n} - (d_n -
/// d_{n+1}), c_{2n+2} = c_{2n+1} - (d_n - d_{n+1}) on coefficient vectors.
class BreakpointLadder {
public:
    explicit BreakpointLadder(int n_max);

    int n_max() const { return n_max_; }
    LogScalar d(int n) const { return LogScalar::from_log(log_d(n)); }
    /// c_m for 0 <= m <= 2 n_max + 2.
    LogScalar c(int m) const;
    /// Double image of c_m; the anchor bases used by loci.
    double anchor(int m) const { return anchors_.at(static_cast<std::size_t>(m)); }
    /// Ladder index of an anchor base, or -1.
    int anchor_index(double base) const;
    int size() const { return static_cast<int>(anchors_.size()); }

    /// Coefficients of c_m on d_0, d_1, ...
    const std::vector<long>& coefficients(int m) const { return coeffs_.at(static_cast<std::size_t>(m)); }

    struct IdentityReport {
        /// max over n <= n_max of |(c_{2n} - d_n)/d_n - 1| and |(c_{2n+1} - d_n)/d_{n+1} - 1|.
        double even_residual = 0.0;
        double odd_residual = 0.0;
        /// The same recurrence run in plain doubles from 2/e, against the exact values.
        double naive_drift = 0.0;
        bool strictly_decreasing = true;
    };
    IdentityReport verify_identities() const;

private:
    LogScalar combine(const std::vector<long>& coeff) const;

    int n_max_;
    std::vector<std::vector<long>> coeffs_;
    std::vector<double> anchors_;
};

/// ln ln(1/x) on (0, 1/e], 0 on (1/e, 1].
RealFunction loglog_function();

/// The ladder sawtooth g: 0 at every c_{2n}, 1 at every c_{2n+1}.
RealFunction sawtooth_g(int n_max = kMaxRepresentableLevel);

/// Offset of the level crossing g = level from the peak c_{2n+1}: e^{-e^{n+level}} - d_{n+1}.
LogScalar peak_offset(int n, double level);
/// |Delta_n^a| (n >= 1) and |Delta_n^b| (n >= 0), closed form, any depth.
LogScalar level_a_length(int n, double a);
LogScalar level_b_length(int n, double b);

struct LevelSets {
    double a = 0.0;
    double b = 0.0;
    int n_max = 0;
    /// a_cells[n] = Delta_n^a around c_{2n} (a_cells[0] reaches 1);
    /// b_cells[n] = Delta_n^b around c_{2n+1}.
    std::vector<Interval> a_cells;
    std::vector<Interval> b_cells;
};

LevelSets level_sets(double a, double b, int n_max = kMaxRepresentableLevel);

/// 1/p = min(max(g, a), b).
Exponent counterexample_exponent(double a, double b, int n_max = kMaxRepresentableLevel);
/// 1/p = min(max(ln ln(1/x), a), b).
Exponent loglog_clamped_exponent(double a, double b);
/// 1/p = a + (b - a) g.
Exponent sawtooth_exponent(double a, double b, int n_max = kMaxRepresentableLevel);
Exponent constant_exponent(double p0);
/// lo on [0, at), hi on [at, 1].
Exponent two_step_exponent(double lo, double hi, double at = 0.5);
/// alpha + beta x.
Exponent linear_exponent(double alpha, double beta);
Exponent shifted(const Exponent& p, double c);
/// p_+(Q_i) on each cell of P.
Exponent tilde_exponent(const Exponent& p, const Partition& cells);

/// Empirical sup of |(p(x) - p(y)) ln|x - y|| over random pairs, pairs at
/// log-spaced separations, and pairs straddling the declared breakpoints.
double log_holder_defect(const Exponent& p, int n_pairs, std::uint64_t seed);

RealFunction constant_function(double c);
RealFunction identity_function();
/// x^{-alpha}, singular at 0.
RealFunction power_function(double alpha);
/// |x - s|^{-alpha}, singular at s.
RealFunction interior_power_function(double s, double alpha);
RealFunction indicator(const Interval& q);
RealFunction indicator_union(std::vector<Interval> cells);
/// Value values[i] on cell i.
RealFunction step_function(const Partition& p, std::vector<double> values);

} // namespace vexnorm
