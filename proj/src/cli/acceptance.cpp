#include "vexnorm/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>

#include "json.hpp"
#include "vexnorm/corpus.hpp"
#include "vexnorm/counterexample.hpp"
#include "vexnorm/errors.hpp"
#include "vexnorm/estimates.hpp"
#include "vexnorm/norm.hpp"
#include "vexnorm/oscillation.hpp"
#include "vexnorm/registry.hpp"
#include "vexnorm/rng.hpp"
#include "vexnorm/zoo.hpp"

#ifndef VEXNORM_ORACLE_PATH
#define VEXNORM_ORACLE_PATH ""
#endif
#ifndef VEXNORM_BASELINE_PATH
#define VEXNORM_BASELINE_PATH ""
#endif

namespace vexnorm {

std::string default_oracle_path() { return VEXNORM_ORACLE_PATH; }
std::string default_baseline_path() { return VEXNORM_BASELINE_PATH; }

namespace {

using json = nlohmann::json;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::optional<json> load_json(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        return json::parse(in);
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

double oracle_number(const json& j) { return std::stod(j.get<std::string>()); }

std::pair<double, double> random_levels(Rng& rng, double b_max = 0.95) {
    double a = rng.uniform(0.15, 0.45);
    double b = rng.uniform(a + 0.05, std::min(b_max, 1.0 - a - 0.01));
    return {a, b};
}

// Past this b the level-6 peak offsets of the clamped exponent underflow,
// and a shallower ladder leaves a floor cell with no defined exponent.
constexpr double kCounterexampleMaxB = 0.55;

Exponent random_exponent(Rng& rng) {
    switch (rng.below(6)) {
    case 0: return constant_exponent(rng.uniform(1.1, 4.0));
    case 1: {
        double lo = rng.uniform(1.1, 3.0);
        return two_step_exponent(lo, rng.uniform(lo, lo + 2.0), rng.uniform(0.1, 0.9));
    }
    case 2: {
        double alpha = rng.uniform(1.2, 3.0);
        return linear_exponent(alpha, rng.uniform(-(alpha - 1.1), 2.0));
    }
    case 3: {
        auto [a, b] = random_levels(rng);
        return loglog_clamped_exponent(a, b);
    }
    case 4: {
        auto [a, b] = random_levels(rng);
        return sawtooth_exponent(a, b);
    }
    default: {
        auto [a, b] = random_levels(rng, kCounterexampleMaxB);
        return counterexample_exponent(a, b);
    }
    }
}

CorpusEntry random_corpus(Rng& rng, double q_plus) {
    return corpus_function(static_cast<int>(rng.below(kCorpusFamilies)), rng.next(), q_plus);
}

Interval random_interval(Rng& rng) {
    if (rng.uniform() < 0.3) {
        double w = rng.log_uniform(1e-8, 1.0);
        return Interval(0.0, w);
    }
    double lo = rng.uniform(0.0, 0.95);
    double w = rng.log_uniform(1e-6, 1.0 - lo);
    return Interval(lo, std::min(1.0, lo + w));
}

struct Ctx {
    const AcceptanceOptions& opts;
    std::optional<json> oracle;
    std::optional<json> baseline;
};

using Check = std::function<void(Ctx&, CriterionResult&)>;

void c1(Ctx&, CriterionResult& r) {
    auto e = constant_exponent(2.0);
    double n1 = char_norm(e, Interval(0.0, 0.25));
    double n2 = luxemburg_norm(power_function(0.25), e);
    double err = std::max(std::abs(n1 - 0.5), std::abs(n2 - std::numbers::sqrt2));
    r.value = err;
    r.threshold = 1e-8;
    r.pass = err <= 1e-8;
    r.detail = "||chi[0,1/4]||=" + g17(n1) + " ||x^-1/4||=" + g17(n2);
}

void c2(Ctx& ctx, CriterionResult& r) {
    double worst = 0.0;
    std::string arg;
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng rng(ctx.opts.seed, 0x0200 + i);
        auto e = random_exponent(rng);
        auto f = random_corpus(rng, e.p_plus());
        double nf = luxemburg_norm(f.f, e);
        double rho = modular(scaled(f.f, 1.0 / nf), e, kUnit, 1e-12);
        double dev = std::abs(rho - 1.0);
        if (dev >= worst) {
            worst = dev;
            arg = f.family_name + " under " + e.name();
        }
    }
    r.value = worst;
    r.threshold = 1e-6;
    r.pass = worst <= 1e-6;
    r.detail = "max |rho(f/||f||)-1| over 20 pairs, worst " + arg;
}

void c3(Ctx& ctx, CriterionResult& r) {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng(ctx.opts.seed, 0x0300 + i);
        auto p = random_exponent(rng);
        Exponent q = rng.uniform() < 0.5 ? shifted(p, rng.uniform(0.0, 1.5))
                                         : constant_exponent(p.p_plus() + rng.uniform(0.0, 1.0));
        auto f = random_corpus(rng, q.p_plus());
        worst = std::max(worst, embedding_defect(f.f, p, q));
    }
    r.value = worst;
    r.threshold = 2.0;
    r.pass = worst <= 2.0;
    r.detail = "max ||f||_p/||f||_q over 50 triples with p <= q";
}

void c4(Ctx& ctx, CriterionResult& r) {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng(ctx.opts.seed, 0x0400 + i);
        auto p = random_exponent(rng);
        auto f = random_corpus(rng, p.p_plus());
        auto g = random_corpus(rng, conjugate(p).p_plus());
        worst = std::max(worst, associate_pairing(f.f, g.f, p).holder_defect);
    }
    r.value = worst;
    r.threshold = 2.0;
    r.pass = worst <= 2.0;
    r.detail = "max int|fg|/(||f||_p ||g||_p') over 100 pairs = " + g17(worst);
}

void c5(Ctx& ctx, CriterionResult& r) {
    Rng rng(ctx.opts.seed, 0x0500);
    int passed = 0, total = 0;
    double worst = 0.0;
    auto run = [&](double a, double b) {
        auto m = verify_mean_bound(a, b);
        ++total;
        if (m.pass) ++passed;
        worst = std::max(worst, m.lhs / m.rhs);
    };
    const double top = 1.0 / std::numbers::e;
    for (int i = 0; i < 100; ++i) {
        double b = rng.uniform() < 0.5 ? rng.uniform(0.0, top) : rng.log_uniform(1e-30, top);
        if (!(b > 0.0)) b = top;
        double a = rng.uniform() < 0.2 ? 0.0 : b * rng.uniform(0.0, 0.999);
        run(a, b);
    }
    for (int j = 1; j <= 20; ++j) {
        double b = std::pow(10.0, -15.0 * j);
        run(j % 2 == 0 ? 0.0 : b * 1e-3, b);
    }
    r.value = worst;
    r.threshold = 1.0;
    r.pass = passed == total;
    r.detail = std::to_string(passed) + "/" + std::to_string(total) + " pairs; max lhs/rhs " + g6(worst);
}

void c6(Ctx& ctx, CriterionResult& r) {
    auto lc = blo_log_coefficient(loglog_function());
    r.value = lc.value;
    r.threshold = 4.0 + 1e-6;
    r.pass = std::isfinite(lc.value) && lc.value <= r.threshold;
    r.detail = std::to_string(lc.intervals) + " intervals, witness " + lc.witness.describe();
    if (ctx.oracle) r.detail += ", dense oracle " + g6(oracle_number((*ctx.oracle)["blo_log_loglog_dense"]["sup"]));
}

void c7(Ctx& ctx, CriterionResult& r) {
    auto lc = blo_log_coefficient(sawtooth_g(6));
    double threshold = 20.0;
    bool confirmed = true;
    if (ctx.oracle) {
        const auto& o = (*ctx.oracle)["blo_log_sawtooth_dense"];
        threshold = o["threshold"].get<double>();
        double dense = oracle_number(o["sup"]);
        confirmed = dense <= threshold;
        r.detail = "dense oracle sup " + g6(dense) + (confirmed ? " confirms" : " exceeds") + " the budget; ";
    } else {
        r.detail = "oracle file unavailable, budget unconfirmed; ";
    }
    r.value = lc.value;
    r.threshold = threshold;
    r.pass = confirmed && std::isfinite(lc.value) && lc.value <= threshold;
    r.detail += std::to_string(lc.intervals) + " intervals, witness " + lc.witness.describe();
}

void c8(Ctx&, CriterionResult& r) {
    BreakpointLadder ladder(6);
    auto rep = ladder.verify_identities();
    r.value = std::max(rep.even_residual, rep.odd_residual);
    r.threshold = 1e-12;
    r.pass = r.value <= 1e-12 && rep.strictly_decreasing;
    r.detail = "even " + g6(rep.even_residual) + " odd " + g6(rep.odd_residual) + " naive drift " + g6(rep.naive_drift);
}

void c9(Ctx&, CriterionResult& r) {
    const double a = 0.3, b = 0.4;
    double worst = 0.0;
    for (int k = 1; k <= 12; ++k) {
        LogScalar ratio = g_failure_ratio(k, a, b);
        worst = std::max(worst, std::abs(std::expm1(ratio.log() - (1.0 - a - b) * std::log(k))));
    }
    auto e = counterexample_exponent(a, b);
    double numeric = 0.0;
    for (int k = 1; k <= 3; ++k) {
        auto dp = delta_partition(k, a, b);
        auto mc = matched_subintervals(k, a, b);
        double pg = property_g_ratio(witness_f(mc), witness_g(mc), dp.partition, e, e);
        numeric = std::max(numeric, std::abs(pg / std::pow(k, 1.0 - a - b) - 1.0));
    }
    r.value = worst;
    r.threshold = 1e-12;
    r.pass = worst <= 1e-12 && numeric <= 0.05;
    r.detail = "k=1..12 closed form; numeric property-G on Delta (k<=3) within " + g6(numeric) + " of k^0.3";
}

void c10(Ctx&, CriterionResult& r) {
    double worst = 0.0;
    std::size_t cases = 0;
    for (double p0 : {1.25, 2.0, 3.5, 6.0}) {
        auto e = constant_exponent(p0);
        auto suite = estimate_suite(e, kSuiteSeed);
        for (const auto& c : run_envelope_suite(e, suite)) {
            ++cases;
            worst = std::max({worst, std::abs(c.gprime - 1.0), std::abs(c.gsecond - 1.0)});
        }
    }
    r.value = worst;
    r.threshold = 1e-8;
    r.pass = worst <= 1e-8;
    r.detail = std::to_string(cases) + " cases over p in {1.25,2,3.5,6}";
}

void c11(Ctx& ctx, CriterionResult& r) {
    int passed = 0;
    double const_dev = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng(ctx.opts.seed, 0x0b00 + i);
        auto e = random_exponent(rng);
        auto q = random_interval(rng);
        double t = rng.uniform() < 0.05 ? 0.0 : rng.log_uniform(1e-3, 1e3);
        auto chk = exponent_average_check(e, q, t);
        if (chk.pass) ++passed;
        if (e.is_constant() && t > 0.0) const_dev = std::max(const_dev, std::abs(std::expm1(chk.log_lhs - chk.log_rhs)));
    }
    r.value = const_dev;
    r.threshold = 1e-9;
    r.pass = passed == 200 && const_dev <= 1e-9;
    r.detail = std::to_string(passed) + "/200 pass; constant-p equality deviation " + g6(const_dev);
}

void c12(Ctx& ctx, CriterionResult& r) {
    r.threshold = kBaselineBand;
    if (!ctx.baseline) {
        r.pass = false;
        r.detail = "baseline file unavailable";
        return;
    }
    double worst = 0.0;
    bool finite = true;
    std::string parts;
    int matched = 0;
    for (const auto& entry : (*ctx.baseline)["entries"]) {
        auto name = entry["exponent"].get<std::string>();
        double want = entry["sup_gprime"].get<double>();
        auto got = gprime_suite_sup(name);
        if (name == "counterexample:0.3,0.4" || name == "loglog-clamped:0.3,0.4") ++matched;
        finite = finite && std::isfinite(got.sup);
        worst = std::max(worst, std::abs(got.sup / want - 1.0));
        parts += (parts.empty() ? "" : "; ") + name + " sup " + g17(got.sup) + " (baseline " + g17(want) + ")";
    }
    r.value = worst;
    r.pass = matched == 2 && finite && worst <= kBaselineBand;
    r.detail = parts + (matched == 2 ? "" : "; baseline lacks an exponent");
}

void c13(Ctx&, CriterionResult& r) {
    auto w = g_second_witness(3, 0.3, 0.4);
    bool nondecreasing = true;
    for (std::size_t i = 1; i < w.size(); ++i) nondecreasing = nondecreasing && w[i].value >= w[i - 1].value;
    bool strict = w[2].value - w[2].error_bar > w[0].value + w[0].error_bar;
    auto wa = g_second_witness(3, 0.3, 0.4, 1e-10, WitnessSupport::a_cells);
    r.value = w[2].value - w[0].value;
    r.threshold = w[2].error_bar + w[0].error_bar;
    r.pass = nondecreasing && strict;
    r.detail = "B-support";
    for (const auto& x : w) r.detail += " " + g17(x.value) + "+-" + g6(x.error_bar);
    r.detail += "; A-support";
    for (const auto& x : wa) r.detail += " " + g17(x.value);
}

struct Spec {
    int id;
    const char* name;
    double limit;
    Check run;
};

const std::vector<Spec>& specs() {
    static const std::vector<Spec> s = {
        {1, "constant-exponent exactness", 1.0, c1},
        {2, "unit modular at the norm", 30.0, c2},
        {3, "embedding constant", 30.0, c3},
        {4, "generalized Holder", 60.0, c4},
        {5, "loglog mean-oscillation bound", 60.0, c5},
        {6, "BLO log coefficient of loglog", 60.0, c6},
        {7, "BLO log coefficient of sawtooth", 120.0, c7},
        {8, "ladder identities", 1.0, c8},
        {9, "property-G failure ratio", 120.0, c9},
        {10, "Lebesgue envelope identity", 120.0, c10},
        {11, "exponent averaging lower bound", 60.0, c11},
        {12, "G' regression baseline", 300.0, c12},
        {13, "G'' failure witnesses", 300.0, c13},
    };
    return s;
}

} // namespace

GprimeSup gprime_suite_sup(const std::string& exponent_spec) {
    auto e = parse_exponent(exponent_spec);
    std::vector<std::pair<std::string, Partition>> extra;
    if (auto lv = counterexample_levels(exponent_spec))
        for (int k = 1; k <= kMaxRepresentableLevel; ++k)
            extra.emplace_back("delta:" + std::to_string(k), delta_partition(k, lv->first, lv->second).partition);
    auto suite = estimate_suite(e, kSuiteSeed, extra);
    GprimeSup out{exponent_spec, 0.0, "", 0};
    for (const auto& c : run_envelope_suite(e, suite)) {
        ++out.cases;
        if (c.gprime > out.sup) {
            out.sup = c.gprime;
            out.argmax = c.partition_name + " / " + c.function_name;
        }
    }
    return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    Ctx ctx{opts, load_json(opts.oracle_path), load_json(opts.baseline_path)};
    std::vector<CriterionResult> out;
    for (const auto& s : specs()) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), s.id) == opts.only.end()) continue;
        CriterionResult r;
        r.id = s.id;
        r.name = s.name;
        r.limit_seconds = s.limit;
        auto t0 = std::chrono::steady_clock::now();
        try {
            s.run(ctx, r);
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("error: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.limit_seconds) {
            r.pass = false;
            r.detail += " (over time budget)";
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace vexnorm
