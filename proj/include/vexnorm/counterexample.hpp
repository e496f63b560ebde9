#pragma once

#include <cstddef>
#include <vector>

#include "vexnorm/estimates.hpp"
#include "vexnorm/zoo.hpp"

namespace vexnorm {

/// Partition of [0,1] cut at the right ends of the A-level sets.
struct DeltaPartition {
    double a = 0.0;
    double b = 0.0;
    int k = 0;
    /// Ascending: bottom residual, Delta_k, ..., Delta_1, top residual.
    Partition partition{{Interval(0.0, 1.0)}};
    /// cell_of[n] is the index of Delta_n (cell_of[0] is the top residual).
    std::vector<std::size_t> cell_of;
    std::size_t bottom = 0;
    std::size_t top = 0;
    /// Delta_n^a and Delta_n^b both lie in Delta_n for every n <= k.
    bool containment = false;

    const Interval& delta(int n) const { return partition[cell_of.at(static_cast<std::size_t>(n))]; }
};

DeltaPartition delta_partition(int k, double a, double b, int n_max = kMaxRepresentableLevel);

/// min over n <= k of |Delta_n^a| and |Delta_n^b|; any depth.
LogScalar matched_delta(int k, double a, double b);

struct MatchedCells {
    LogScalar delta;
    /// a_cells[n-1] sits at the left end of Delta_n^a, b_cells[n-1] of Delta_n^b.
    std::vector<Interval> a_cells;
    std::vector<Interval> b_cells;
    /// Every cell lies inside its level-set parent.
    bool inside = false;
};

MatchedCells matched_subintervals(int k, double a, double b);

/// sum_n |a'_n|^a |b'_n|^b / ((sum |a'_n|)^a (sum |b'_n|)^b), which is k^{1-a-b}.
LogScalar g_failure_ratio(int k, double a, double b);

enum class WitnessSupport { a_cells, b_cells };

struct WitnessValue {
    int k = 0;
    double value = 0.0;
    double log_value = 0.0;
    double error_bar = 0.0;
    /// Only the closed-form route was run.
    bool analytic_only = false;
    /// The closed-form route, next to value when both ran.
    double analytic_value = 0.0;
    /// ln ||f chi_{Delta_n}|| by quadrature against the closed form delta^level, worst over n.
    double cell_norm_discrepancy = 0.0;
};

/// ||f_k'|| / ||S(f_k')|| against the Delta partition, f_k' the indicator of
/// the matched cells on the chosen support, for k' = 1..k.
std::vector<WitnessValue> g_second_witness(int k, double a, double b, double tol = 1e-10,
                                           WitnessSupport support = WitnessSupport::b_cells);

/// ln ||chi_{Delta_n}|| for the counterexample exponent from the closed-form
/// exponent distribution on the cell; any depth.
double analytic_log_char_norm(int n, double a, double b, double tol = 1e-12);

/// Witness functions on the matched cells.
RealFunction witness_f(const MatchedCells& m);
RealFunction witness_g(const MatchedCells& m);

inline constexpr int kQuadratureWitnessDepth = 3;

} // namespace vexnorm
