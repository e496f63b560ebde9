#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vexnorm {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    /// The measured quantity the check is judged on.
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 42;
    /// Frozen oracle values; skipped sub-checks are named in the detail when empty or missing.
    std::string oracle_path;
    std::string baseline_path;
    /// Criterion ids to run; empty runs all of 1..13.
    std::vector<int> only;
};

/// Frozen-file locations from the build tree.
std::string default_oracle_path();
std::string default_baseline_path();

inline constexpr std::uint64_t kSuiteSeed = 42;
inline constexpr double kBaselineBand = 0.10;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// The suite sup of gprime for one exponent, as stored in the baseline.
struct GprimeSup {
    std::string exponent;
    double sup = 0.0;
    std::string argmax;
    std::size_t cases = 0;
};
GprimeSup gprime_suite_sup(const std::string& exponent_spec);

} // namespace vexnorm
