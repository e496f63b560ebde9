#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vexnorm/corpus.hpp"
#include "vexnorm/norm.hpp"
#include "vexnorm/oscillation.hpp"

namespace vexnorm {

/// Norms of step functions on a fixed partition for a fixed exponent.
///
/// Keeps one log-modular of chi_Q per cell; the modular of sum v_i chi_{Q_i}
/// is then a log-sum over cells of those modulars shifted by ln v_i, so each
/// cell's exponent samples are computed once however many step functions
/// are measured.
class StepNorm {
public:
    StepNorm(const Partition& p, const Exponent& e, double tol = 1e-10);
    ~StepNorm();
    StepNorm(StepNorm&&) noexcept;

    std::size_t size() const;
    /// ln ||chi_{Q_i}||.
    double log_char_norm(std::size_t i);
    /// ||sum_i v_i chi_{Q_i}|| from ln |v_i| (-inf for a zero cell).
    NormResult norm(std::span<const double> log_values);

private:
    struct State;
    std::unique_ptr<State> s_;
};

struct CellNorms {
    /// ln ||f chi_Q|| per cell, -inf where f vanishes on Q.
    std::vector<double> log_f;
    /// ln ||chi_Q|| per cell.
    std::vector<double> log_chi;
};

CellNorms cell_norms(const RealFunction& f, const Partition& p, const Exponent& e, double tol = 1e-10);

/// S(f) = sum over cells of (||f chi_Q|| / ||chi_Q||) chi_Q.
RealFunction partition_envelope(const RealFunction& f, const Partition& p, const Exponent& e, double tol = 1e-10);

struct EnvelopeRatios {
    double log_f_norm = 0.0;
    double log_envelope_norm = 0.0;
    /// ||S(f)|| / ||f||.
    double gprime = 0.0;
    /// ||f|| / ||S(f)||.
    double gsecond = 0.0;
};

EnvelopeRatios envelope_ratios(const RealFunction& f, const Partition& p, const Exponent& e, double tol = 1e-10);
double gprime_ratio(const RealFunction& f, const Partition& p, const Exponent& e, double tol = 1e-10);
double gsecond_ratio(const RealFunction& f, const Partition& p, const Exponent& e, double tol = 1e-10);

struct PropertyGTerms {
    double ratio = 0.0;
    double log_ratio = 0.0;
    /// ln(||f chi_Q|| ||g chi_Q||') per cell.
    std::vector<double> log_terms;
};

/// sum_Q ||f chi_Q||_p ||g chi_Q||_q / (||f||_p ||g||_q), where q defaults to p'.
PropertyGTerms property_g_terms(const RealFunction& f, const RealFunction& g, const Partition& p, const Exponent& e,
                                const std::optional<Exponent>& dual = std::nullopt, double tol = 1e-10);
double property_g_ratio(const RealFunction& f, const RealFunction& g, const Partition& p, const Exponent& e,
                        const std::optional<Exponent>& dual = std::nullopt, double tol = 1e-10);

struct ConditionA {
    double value = 0.0;
    Interval witness{0.0, 1.0};
    std::size_t intervals = 0;
    /// Every scanned interval with ln(||chi_Q||_p ||chi_Q||_{p'} / |Q|).
    std::vector<Interval> scanned;
    std::vector<double> log_ratio;
};

/// sup over scanned Q of ||chi_Q||_p ||chi_Q||_{p'} / |Q|.
ConditionA condition_a_coefficient(const Exponent& e, const ScanConfig& scan = {}, double tol = 1e-10);

/// T_P f = sum over cells of the average of |f| on Q, times chi_Q.
RealFunction averaging_operator(const RealFunction& f, const Partition& p, double tol = 1e-10);

struct AveragingBound {
    double value = 0.0;
    std::size_t partition = 0;
    std::size_t function = 0;
    std::size_t evaluated = 0;
};

/// sup of ||T_P f|| / ||f|| over the product suite.
AveragingBound averaging_norm_bound(const Exponent& e, const std::vector<Partition>& partitions,
                                    const std::vector<RealFunction>& funcs, double tol = 1e-10);

struct SampledFunction {
    std::vector<double> x;
    std::vector<double> value;
};

/// Mf on the grid x_i = i/(n-1): the max over grid intervals [x_j, x_k]
/// containing x_i of the average of |f|, from prefix integrals per grid cell.
SampledFunction maximal_function(const RealFunction& f, int grid_n, double tol = 1e-10);

struct AverageBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double log_lhs = 0.0;
    double log_rhs = 0.0;
    bool pass = false;
};

/// (1/|Q|) int_Q t^{p(x)} dx against e^{2(p_-(Q) - p_+(Q))} t^{pbar_Q}.
AverageBoundCheck exponent_average_check(const Exponent& e, const Interval& q, double t, double tol = 1e-10);

struct CharNormBounds {
    double c3 = 0.0;
    double c4 = 0.0;
    std::size_t argmin = 0;
    std::size_t argmax = 0;
};

/// min and max over the intervals of ||chi_Q|| / |Q|^{1/p_+(Q)}.
CharNormBounds char_norm_bounds_check(const Exponent& e, const std::vector<Interval>& intervals, double tol = 1e-10);

enum class Objective { gprime, gsecond, property_g };
const char* objective_name(Objective o);
Objective parse_objective(const std::string& s);

struct SearchResult {
    double best_value = 0.0;
    std::string f_description;
    std::string g_description;
    std::string partition_description;
    int evaluations = 0;
    int improvements = 0;
};

/// Randomised hill climbing over partitions and test functions; a lower
/// bound for the best constant of the objective. Deterministic in seed.
SearchResult adversarial_search(const Exponent& e, Objective objective, int budget, std::uint64_t seed,
                                double tol = 1e-8);

struct SuiteCase {
    std::string partition_name;
    std::string function_name;
    double gprime = 0.0;
    double gsecond = 0.0;
    double log_f_norm = 0.0;
};

struct EstimateSuite {
    std::vector<std::string> partition_names;
    std::vector<Partition> partitions;
    std::vector<CorpusEntry> functions;
};

inline constexpr int kSuiteMembers = 3;

/// Versioned suite: dyadic depths 1..6, ten seeded random partitions, the
/// partition cut at every declared breakpoint of the exponent, any extra
/// partitions supplied by the caller, and kSuiteMembers members of each
/// corpus family.
EstimateSuite estimate_suite(const Exponent& e, std::uint64_t seed,
                             const std::vector<std::pair<std::string, Partition>>& extra = {});

std::vector<SuiteCase> run_envelope_suite(const Exponent& e, const EstimateSuite& suite, double tol = 1e-10);

} // namespace vexnorm
