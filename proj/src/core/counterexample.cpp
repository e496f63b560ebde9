#include "vexnorm/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vexnorm/errors.hpp"
#include "vexnorm/parallel.hpp"
#include "vexnorm/quadrature.hpp"

namespace vexnorm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_pair(double a, double b, const char* who) {
    if (!(a > 0.0 && a < b && b < 1.0 && a + b < 1.0))
        throw ArgumentError(std::string(who) + ": need 0 < a < b < 1 and a + b < 1");
}

LogScalar d_of(int n) { return LogScalar::from_log(log_d(n)); }

LogScalar delta_cell_length(int n, double a) {
    LogScalar upper = d_of(n - 1).minus(double_exp(n - 1 + a));
    LogScalar middle = d_of(n).minus(d_of(n + 1));
    return upper + middle + peak_offset(n, a);
}

double log_add(double x, double y) {
    if (x == kNegInf) return y;
    if (y == kNegInf) return x;
    double hi = std::max(x, y), lo = std::min(x, y);
    return hi + std::log1p(std::exp(lo - hi));
}

// Sub-cell of length delta at the left end of parent; snaps to the parent
// when delta is its whole length.
Interval left_cell(const Interval& parent, LogScalar delta) {
    if (relative_difference(delta, parent.measure()) <= 1e-12) return Interval(parent.lo(), parent.hi(), parent.measure());
    return Interval(parent.lo(), shifted_by(parent.lo(), delta.value()), delta);
}

// Modular of chi_{Delta_n} / e^L for 1/p = clamp(g, a, b), from the
// distribution of p on the cell. On each rising branch the variable part is
// E(n+a) int_0^V e^{-v} e^{-L p(v)} dv with 1/p(v) = ln(e^{n+a} + v) - n.
class CellModular {
public:
    CellModular(int n, double a, double b, double tol)
        : n_(n), a_(a), b_(b), tol_(tol), ea_(std::exp(n + a)), v_(std::exp(n + b) - std::exp(n + a)) {
        log_b_plateau_ = std::numbers::ln2 + peak_offset(n, b).log();
        log_a_plateau_ = level_a_length(n, a).log();
        log_branch_ = std::numbers::ln2 + double_exp(n + a).log();
    }

    LogModular::Value operator()(double L) const {
        double t1 = log_b_plateau_ - L / b_;
        double t2 = log_a_plateau_ - L / a_;
        auto [li, si] = branch(L);
        double t3 = log_branch_ + li;
        double total = log_add(log_add(t1, t2), t3);
        double slope = -std::exp(t1 - total) / b_ - std::exp(t2 - total) / a_ + std::exp(t3 - total) * si;
        return {total, slope};
    }

private:
    double p_at(double v) const { return 1.0 / (std::log(ea_ + v) - n_); }

    // ln int_0^V e^{-v - L p(v)} dv and its derivative in L.
    std::pair<double, double> branch(double L) const {
        // Largest exponent on a log grid, used as the shift.
        double m = kNegInf;
        for (int i = 0; i <= 200; ++i) {
            double v = i == 0 ? 0.0 : v_ * std::pow(1e-12, 1.0 - i / 200.0);
            m = std::max(m, -v - L * p_at(v));
        }
        FunctionTraits t;
        double knee = std::min(1.0, 1.0 / v_);
        for (double s : {knee, 10.0 * knee, 100.0 * knee})
            if (s < 1.0) t.breakpoints.push_back(Locus::at(s));
        const double V = v_;
        RealFunction mass("branch", [this, L, m, V](const Locus& x) {
            double v = V * x.approx();
            return std::exp(-v - L * p_at(v) - m);
        }, t);
        RealFunction moment("branch-moment", [this, L, m, V](const Locus& x) {
            double v = V * x.approx();
            double p = p_at(v);
            return p * std::exp(-v - L * p - m);
        }, t);
        QuadratureOptions q{1e-300, std::clamp(tol_ * 1e-2, 1e-14, 1e-10), 200000};
        double i0 = integrate_detailed(mass, Interval(0.0, 1.0), q).value;
        double i1 = integrate_detailed(moment, Interval(0.0, 1.0), q).value;
        if (!(i0 > 0.0)) return {kNegInf, 0.0};
        return {std::log(V) + m + std::log(i0), -i1 / i0};
    }

    int n_;
    double a_, b_, tol_;
    double ea_, v_;
    double log_b_plateau_, log_a_plateau_, log_branch_;
};

} // namespace

DeltaPartition delta_partition(int k, double a, double b, int n_max) {
    check_pair(a, b, "delta_partition");
    if (k < 1) throw ArgumentError("delta_partition: k must be >= 1");
    if (k > n_max) throw ArgumentError("delta_partition: k exceeds n_max");
    auto ls = level_sets(a, b, n_max);
    BreakpointLadder ladder(n_max);
    // cut[n] = right end of Delta_{n+1}^a, written at the peak c_{2n+1}.
    std::vector<Locus> cut;
    for (int n = 0; n <= k; ++n) cut.push_back(Locus::anchored(ladder.anchor(2 * n + 1), -peak_offset(n, a).value()));

    std::vector<Interval> cells;
    cells.emplace_back(Locus::at(0.0), cut[static_cast<std::size_t>(k)]);
    for (int n = k; n >= 1; --n)
        cells.emplace_back(cut[static_cast<std::size_t>(n)], cut[static_cast<std::size_t>(n - 1)], delta_cell_length(n, a));
    cells.emplace_back(cut[0], Locus::at(1.0));

    DeltaPartition out;
    out.a = a;
    out.b = b;
    out.k = k;
    out.partition = Partition(std::move(cells));
    out.bottom = 0;
    out.top = static_cast<std::size_t>(k) + 1;
    out.cell_of.assign(static_cast<std::size_t>(k) + 1, 0);
    out.cell_of[0] = out.top;
    for (int n = 1; n <= k; ++n) out.cell_of[static_cast<std::size_t>(n)] = static_cast<std::size_t>(k - n + 1);
    out.containment = true;
    for (int n = 1; n <= k; ++n) {
        const Interval& q = out.delta(n);
        const auto un = static_cast<std::size_t>(n);
        out.containment = out.containment && q.covers(ls.a_cells[un]) && q.covers(ls.b_cells[un]);
    }
    return out;
}

LogScalar matched_delta(int k, double a, double b) {
    check_pair(a, b, "matched_delta");
    if (k < 1) throw ArgumentError("matched_delta: k must be >= 1");
    LogScalar delta = level_a_length(1, a);
    for (int n = 1; n <= k; ++n) delta = min(delta, min(level_a_length(n, a), level_b_length(n, b)));
    return delta;
}

MatchedCells matched_subintervals(int k, double a, double b) {
    check_pair(a, b, "matched_subintervals");
    if (k < 1) throw ArgumentError("matched_subintervals: k must be >= 1");
    if (k > kMaxRepresentableLevel)
        throw ArgumentError("matched_subintervals: k beyond the representable ladder (" +
                            std::to_string(kMaxRepresentableLevel) + ")");
    auto ls = level_sets(a, b, k);
    MatchedCells out;
    out.delta = matched_delta(k, a, b);
    out.inside = true;
    for (int n = 1; n <= k; ++n) {
        const auto un = static_cast<std::size_t>(n);
        out.a_cells.push_back(left_cell(ls.a_cells[un], out.delta));
        out.b_cells.push_back(left_cell(ls.b_cells[un], out.delta));
        out.inside = out.inside && ls.a_cells[un].covers(out.a_cells.back()) && ls.b_cells[un].covers(out.b_cells.back());
    }
    return out;
}

LogScalar g_failure_ratio(int k, double a, double b) {
    check_pair(a, b, "g_failure_ratio");
    if (k < 1) throw ArgumentError("g_failure_ratio: k must be >= 1");
    LogScalar delta = matched_delta(k, a, b);
    // The quotient is homogeneous of degree zero, so lengths are measured in units of delta.
    std::vector<LogScalar> len(static_cast<std::size_t>(k), delta / delta);
    std::vector<LogScalar> terms;
    for (const auto& l : len) terms.push_back(l.pow(a) * l.pow(b));
    LogScalar total = sum(len);
    return sum(terms) / (total.pow(a) * total.pow(b));
}

RealFunction witness_f(const MatchedCells& m) { return indicator_union(m.a_cells); }
RealFunction witness_g(const MatchedCells& m) { return indicator_union(m.b_cells); }

double analytic_log_char_norm(int n, double a, double b, double tol) {
    check_pair(a, b, "analytic_log_char_norm");
    if (n < 1) throw ArgumentError("analytic_log_char_norm: n must be >= 1");
    CellModular m(n, a, b, tol);
    return solve_log_norm([&](double L) { return m(L); }, 1.0 / b, 1.0 / a, tol).log_value;
}

std::vector<WitnessValue> g_second_witness(int k, double a, double b, double tol, WitnessSupport support) {
    check_pair(a, b, "g_second_witness");
    if (k < 1) throw ArgumentError("g_second_witness: k must be >= 1");
    if (!(tol > 0.0)) throw ArgumentError("g_second_witness: tol must be positive");
    const double level = support == WitnessSupport::a_cells ? a : b;

    std::vector<CellModular> cells;
    std::vector<double> log_chi(static_cast<std::size_t>(k) + 1, 0.0);
    for (int n = 1; n <= k; ++n) cells.emplace_back(n, a, b, tol);
    parallel_for(static_cast<std::size_t>(k), [&](std::size_t i) {
        log_chi[i + 1] = solve_log_norm([&](double L) { return cells[i](L); }, 1.0 / b, 1.0 / a, tol).log_value;
    });

    std::vector<WitnessValue> out(static_cast<std::size_t>(k));
    parallel_for(static_cast<std::size_t>(k), [&](std::size_t i) {
        const int kk = static_cast<int>(i) + 1;
        WitnessValue w;
        w.k = kk;
        const double log_delta = matched_delta(kk, a, b).log();
        const double log_f = level * (std::log(static_cast<double>(kk)) + log_delta);
        // ||S|| from the closed-form cell modulars.
        auto phi = [&](double mu) {
            double total = kNegInf, slope_num = 0.0;
            std::vector<LogModular::Value> parts;
            for (int n = 1; n <= kk; ++n) {
                double lv = level * log_delta - log_chi[static_cast<std::size_t>(n)];
                parts.push_back(cells[static_cast<std::size_t>(n - 1)](mu - lv));
                total = log_add(total, parts.back().log_rho);
            }
            for (const auto& p : parts) slope_num += std::exp(p.log_rho - total) * p.slope;
            return LogModular::Value{total, slope_num};
        };
        double log_s = solve_log_norm(phi, 1.0 / b, 1.0 / a, tol).log_value;
        w.analytic_value = std::exp(log_f - log_s);

        if (kk <= kQuadratureWitnessDepth) {
            auto e = counterexample_exponent(a, b);
            auto dp = delta_partition(kk, a, b);
            auto mc = matched_subintervals(kk, a, b);
            RealFunction f = support == WitnessSupport::a_cells ? witness_f(mc) : witness_g(mc);
            StepNorm sn(dp.partition, e, tol);
            std::vector<double> lv(dp.partition.size(), kNegInf);
            for (int n = 1; n <= kk; ++n) {
                std::size_t c = dp.cell_of[static_cast<std::size_t>(n)];
                lv[c] = level * log_delta - sn.log_char_norm(c);
                LogModular lm(&f, e, dp.delta(n), std::clamp(tol * 1e-2, 1e-13, 1e-10));
                double lfc = solve_log_norm([&](double mu) { return lm.at(mu); }, e.p_minus(), e.p_plus(), tol).log_value;
                w.cell_norm_discrepancy = std::max(w.cell_norm_discrepancy, std::abs(lfc - level * log_delta));
            }
            double log_sq = sn.norm(lv).log_value;
            w.log_value = log_f - log_sq;
            w.value = std::exp(w.log_value);
            w.error_bar = std::abs(w.value - w.analytic_value) + 4.0 * tol * w.value;
        } else {
            w.analytic_only = true;
            w.log_value = log_f - log_s;
            w.value = w.analytic_value;
            w.error_bar = 4.0 * tol * w.value;
        }
        out[i] = w;
    });
    return out;
}

} // namespace vexnorm
