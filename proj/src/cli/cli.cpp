#include "vexnorm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "vexnorm/acceptance.hpp"
#include "vexnorm/counterexample.hpp"
#include "vexnorm/errors.hpp"
#include "vexnorm/estimates.hpp"
#include "vexnorm/norm.hpp"
#include "vexnorm/oscillation.hpp"
#include "vexnorm/registry.hpp"
#include "vexnorm/rng.hpp"

namespace vexnorm {

namespace {

using json = nlohmann::json;

// Non-finite doubles become null in JSON anyway; say so explicitly.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Quote a CSV field only when it needs it.
std::string field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    Table& row() {
        rows_.emplace_back();
        return *this;
    }
    Table& operator<<(double v) {
        rows_.back().push_back(fmt17(v));
        return *this;
    }
    Table& operator<<(int v) {
        rows_.back().push_back(std::to_string(v));
        return *this;
    }
    Table& operator<<(std::size_t v) {
        rows_.back().push_back(std::to_string(v));
        return *this;
    }
    Table& operator<<(bool v) {
        rows_.back().push_back(v ? "true" : "false");
        return *this;
    }
    Table& operator<<(const std::string& s) {
        rows_.back().push_back(field(s));
        return *this;
    }
    Table& operator<<(const char* s) { return *this << std::string(s); }

    std::string str() const {
        std::string out;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        line(header_);
        for (const auto& r : rows_) {
            if (r.size() != header_.size()) throw std::logic_error("csv row width");
            line(r);
        }
        return out;
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Globals {
    std::uint64_t seed = 42;
    double tol = 1e-10;
    int n_max = kMaxRepresentableLevel;
    double a = 0.3;
    double b = 0.4;
    std::string out;
    std::string exponent;
    std::string function;

    RegistryDefaults defaults() const { return {a, b, n_max, seed}; }
    std::string exponent_or(const std::string& d) const { return exponent.empty() ? d : exponent; }
    std::string function_or(const std::string& d) const { return function.empty() ? d : function; }
};

struct Outcome {
    json results = json::object();
    json checks = json::array();
    std::optional<Table> table;
    json parameters = json::object();

    void check(const std::string& name, bool pass, double value, double threshold) {
        checks.push_back({{"name", name}, {"pass", pass}, {"value", num(value)}, {"threshold", num(threshold)}});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c["pass"].get<bool>()) return false;
        return true;
    }
};

json interval_json(const Interval& q) {
    return {{"interval", q.describe()}, {"log_length", num(q.measure().log())}};
}

ScanConfig scan_from(int depth, int levels, double tol) {
    ScanConfig s;
    s.dyadic_depth = depth;
    s.graded_levels = levels;
    s.tol = tol;
    return s;
}

// --- subcommands -----------------------------------------------------------

struct NormArgs {
    double lo = 0.0, hi = 1.0, c = 2.0;
};

Outcome cmd_norm(const Globals& g, const NormArgs& na) {
    Outcome o;
    auto ex = g.exponent_or("const:2"), fs = g.function_or("one");
    auto e = parse_exponent(ex, g.defaults());
    auto f = parse_function(fs, e.p_plus(), g.defaults());
    Interval dom(na.lo, na.hi);
    o.parameters = {{"exponent", ex}, {"function", fs}, {"lo", na.lo}, {"hi", na.hi}, {"c", na.c}};

    auto n = luxemburg_norm_detailed(f, e, dom, g.tol);
    double rho = modular(f, e, dom, g.tol);
    auto rep = check_modular_norm_relations(f, e, dom, na.c, std::max(g.tol, 1e-6));
    o.results = {{"norm", num(n.value)},
                 {"log_norm", num(n.log_value)},
                 {"modular", num(rho)},
                 {"residual", num(n.residual)},
                 {"iterations", n.iterations},
                 {"p_minus", num(e.p_minus())},
                 {"p_plus", num(e.p_plus())},
                 {"unit_residual", num(rep.unit_residual)},
                 {"modular_bound_applies", rep.modular_bound_applies},
                 {"norm_bound_applies", rep.norm_bound_applies}};
    o.check("unit_modular", rep.unit_modular, rep.unit_residual, std::max(g.tol, 1e-6));
    if (rep.modular_bound_applies) o.check("modular_bound", rep.modular_bound, rep.modular_bound_slack, 0.0);
    if (rep.norm_bound_applies) o.check("norm_bound", rep.norm_bound, rep.norm_bound_slack, 0.0);

    Table t({"exponent", "function", "lo", "hi", "norm", "log_value", "modular", "residual"});
    t.row() << ex << fs << na.lo << na.hi << n.value << n.log_value << rho << n.residual;
    o.table = std::move(t);
    return o;
}

struct OscArgs {
    int depth = 14, levels = 40, radii = 21, mean_pairs = 20;
};

Outcome cmd_oscillation(const Globals& g, const OscArgs& oa) {
    Outcome o;
    auto fs = g.function_or("loglog");
    auto f = parse_function(fs, 2.0, g.defaults());
    auto scan = scan_from(oa.depth, oa.levels, g.tol);
    o.parameters = {{"function", fs}, {"depth", oa.depth}, {"levels", oa.levels}, {"radii", oa.radii}};

    auto samples = scan_oscillation(f, scan, true);
    auto coef = blo_log_coefficient(samples);
    std::vector<double> radii;
    for (int i = 0; i < oa.radii; ++i) radii.push_back(std::ldexp(1.0, -i));
    auto prof = oscillation_profile(samples, radii);

    o.results["blo_log"] = {{"value", num(coef.value)}, {"witness", interval_json(coef.witness)},
                            {"intervals", coef.intervals}};
    double gamma_max = 0.0;
    for (double v : prof.gamma) gamma_max = std::max(gamma_max, v);
    o.results["gamma_sup"] = num(gamma_max);
    o.check("blo_log_finite", std::isfinite(coef.value), coef.value, NAN);

    if (fs == "loglog") {
        // The log-weighted bound for ln ln(1/x) on random intervals near 0.
        Rng rng(g.seed, 0x6d65616e);
        json pairs = json::array();
        double worst = -INFINITY;
        bool all = true;
        for (int i = 0; i < oa.mean_pairs; ++i) {
            double b = rng.log_uniform(1e-300, 0.5);
            double a = rng.uniform() < 0.5 ? 0.0 : b * rng.uniform();
            auto m = verify_mean_bound(a, b, std::max(g.tol, 1e-12));
            all = all && m.pass;
            worst = std::max(worst, m.lhs / m.rhs);
            pairs.push_back({{"a", a}, {"b", b}, {"lhs", num(m.lhs)}, {"rhs", num(m.rhs)}, {"pass", m.pass}});
        }
        o.results["mean_bound"] = pairs;
        o.check("mean_bound", all, worst, 1.0);
    }

    Table t({"r", "log_r", "gamma", "eta", "gamma_log", "eta_log"});
    for (std::size_t i = 0; i < prof.r.size(); ++i)
        t.row() << prof.r[i] << std::log(prof.r[i]) << prof.gamma[i] << prof.eta[i] << prof.gamma_log[i]
                << prof.eta_log[i];
    o.table = std::move(t);
    return o;
}

struct EstArgs {
    std::string suite = "full";
    bool averaging = false;
};

bool suite_selects(const std::string& suite, const std::string& partition_name) {
    if (suite == "full") return true;
    return partition_name.rfind(suite, 0) == 0;
}

Outcome cmd_estimates(const Globals& g, const EstArgs& ea) {
    Outcome o;
    if (ea.suite != "full" && ea.suite != "dyadic" && ea.suite != "random" && ea.suite != "breakpoints")
        throw ArgumentError("--suite must be dyadic, random, breakpoints or full");
    auto ex = g.exponent_or("counterexample");
    auto e = parse_exponent(ex, g.defaults());
    o.parameters = {{"exponent", ex}, {"suite", ea.suite}, {"seed", g.seed}};

    std::vector<std::pair<std::string, Partition>> extra;
    if (auto lv = counterexample_levels(ex, g.defaults()))
        for (int k = 1; k <= std::min(g.n_max, kMaxRepresentableLevel); ++k)
            extra.emplace_back("delta:" + std::to_string(k), delta_partition(k, lv->first, lv->second).partition);
    auto full = estimate_suite(e, g.seed, ea.suite == "full" ? extra : decltype(extra){});
    EstimateSuite suite;
    suite.functions = full.functions;
    for (std::size_t i = 0; i < full.partitions.size(); ++i)
        if (suite_selects(ea.suite, full.partition_names[i])) {
            suite.partition_names.push_back(full.partition_names[i]);
            suite.partitions.push_back(full.partitions[i]);
        }
    if (suite.partitions.empty()) throw ArgumentError("suite '" + ea.suite + "' selects no partitions");

    auto cases = run_envelope_suite(e, suite, g.tol);
    double sup1 = -INFINITY, sup2 = -INFINITY, min1 = INFINITY, dev = 0.0;
    std::string arg1, arg2;
    for (const auto& c : cases) {
        if (c.gprime > sup1) sup1 = c.gprime, arg1 = c.partition_name + " / " + c.function_name;
        if (c.gsecond > sup2) sup2 = c.gsecond, arg2 = c.partition_name + " / " + c.function_name;
        min1 = std::min(min1, c.gprime);
        dev = std::max({dev, std::abs(c.gprime - 1.0), std::abs(c.gsecond - 1.0)});
    }
    o.results = {{"cases", cases.size()},
                 {"partitions", suite.partitions.size()},
                 {"functions", suite.functions.size()},
                 {"sup_gprime", num(sup1)},
                 {"sup_gprime_at", arg1},
                 {"min_gprime", num(min1)},
                 {"sup_gsecond", num(sup2)},
                 {"sup_gsecond_at", arg2}};
    if (e.is_constant()) o.check("constant_exponent_ratios", dev <= 1e-8, dev, 1e-8);
    o.check("ratios_finite", std::isfinite(sup1) && std::isfinite(sup2), sup1, NAN);

    if (ea.averaging) {
        std::vector<RealFunction> fs;
        for (const auto& c : suite.functions) fs.push_back(c.f);
        auto av = averaging_norm_bound(e, suite.partitions, fs, g.tol);
        o.results["averaging"] = {{"value", num(av.value)},
                                  {"partition", suite.partition_names.at(av.partition)},
                                  {"function", suite.functions.at(av.function).description},
                                  {"evaluated", av.evaluated}};
    }

    Table t({"partition", "function", "gprime", "gsecond", "log_value"});
    for (const auto& c : cases) t.row() << c.partition_name << c.function_name << c.gprime << c.gsecond << c.log_f_norm;
    o.table = std::move(t);
    return o;
}

Outcome cmd_condition_a(const Globals& g, const OscArgs& oa) {
    Outcome o;
    auto ex = g.exponent_or("shifted:1:counterexample");
    auto e = parse_exponent(ex, g.defaults());
    o.parameters = {{"exponent", ex}, {"depth", oa.depth}, {"levels", oa.levels}};
    auto ca = condition_a_coefficient(e, scan_from(oa.depth, oa.levels, g.tol), g.tol);
    o.results = {{"value", num(ca.value)}, {"witness", interval_json(ca.witness)}, {"intervals", ca.intervals},
                 {"p_minus", num(e.p_minus())}, {"p_plus", num(e.p_plus())}};
    o.check("condition_a_finite", std::isfinite(ca.value), ca.value, NAN);

    Table t({"interval", "log_length", "ratio", "log_value"});
    for (std::size_t i = 0; i < ca.scanned.size(); ++i)
        t.row() << ca.scanned[i].describe() << ca.scanned[i].measure().log() << std::exp(ca.log_ratio[i])
                << ca.log_ratio[i];
    o.table = std::move(t);
    return o;
}

struct MaxArgs {
    int grid = 257;
};

Outcome cmd_maximal(const Globals& g, const MaxArgs& ma) {
    Outcome o;
    auto fs = g.function_or("loglog");
    auto f = parse_function(fs, 2.0, g.defaults());
    o.parameters = {{"function", fs}, {"grid", ma.grid}};
    auto m = maximal_function(f, ma.grid, g.tol);
    double sup = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < m.value.size(); ++i)
        if (m.value[i] > sup) sup = m.value[i], at = i;
    o.results = {{"grid", m.x.size()}, {"sup", num(sup)}, {"sup_at", num(m.x.empty() ? NAN : m.x[at])}};
    o.check("maximal_finite", std::isfinite(sup), sup, NAN);

    Table t({"x", "maximal"});
    for (std::size_t i = 0; i < m.x.size(); ++i) t.row() << m.x[i] << m.value[i];
    o.table = std::move(t);
    return o;
}

struct CeArgs {
    int k = 8;
    std::string support = "b";
};

Outcome cmd_counterexample(const Globals& g, const CeArgs& ca) {
    Outcome o;
    if (ca.k < 1) throw ArgumentError("--k must be at least 1");
    if (ca.support != "a" && ca.support != "b") throw ArgumentError("--support must be a or b");
    double a = g.a, b = g.b;
    if (!(0.0 < a && a < b && b < 1.0)) throw ArgumentError("need 0 < a < b < 1");
    o.parameters = {{"a", a}, {"b", b}, {"k", ca.k}, {"n_max", g.n_max}, {"support", ca.support}};

    int kd = std::min({ca.k, g.n_max, kMaxRepresentableLevel});
    auto dp = delta_partition(kd, a, b, std::min(g.n_max, kMaxRepresentableLevel));
    auto mc = matched_subintervals(kd, a, b);
    json cells = json::array();
    for (int n = 1; n <= kd; ++n) cells.push_back(interval_json(dp.delta(n)));
    o.results["delta_partition"] = {{"k", kd}, {"cells", dp.partition.size()}, {"delta", cells},
                                    {"containment", dp.containment}};
    o.results["matched"] = {{"k", kd}, {"log_delta", num(mc.delta.log())}, {"inside", mc.inside}};
    o.check("containment", dp.containment, kd, NAN);
    o.check("matched_inside", mc.inside, kd, NAN);

    auto ws = g_second_witness(ca.k, a, b, g.tol,
                               ca.support == "a" ? WitnessSupport::a_cells : WitnessSupport::b_cells);
    Table t({"k", "ratio", "log_value", "expected", "rel_err", "log_delta", "gsecond", "gsecond_log_value",
             "gsecond_error", "analytic_only"});
    json rows = json::array();
    double worst = 0.0;
    bool nondecreasing = true;
    for (int k = 1; k <= ca.k; ++k) {
        auto r = g_failure_ratio(k, a, b);
        double expected = std::pow(static_cast<double>(k), 1.0 - a - b);
        double rel = relative_difference(r, LogScalar::from_value(expected));
        worst = std::max(worst, rel);
        const auto& w = ws.at(static_cast<std::size_t>(k - 1));
        if (k > 1 && w.value < ws[static_cast<std::size_t>(k - 2)].value - w.error_bar) nondecreasing = false;
        double ld = matched_delta(k, a, b).log();
        rows.push_back({{"k", k}, {"ratio", num(r.value())}, {"log_value", num(r.log())},
                        {"expected", expected}, {"rel_err", num(rel)}, {"log_delta", num(ld)},
                        {"gsecond", num(w.value)}, {"gsecond_error", num(w.error_bar)},
                        {"analytic_only", w.analytic_only}});
        t.row() << k << r.value() << r.log() << expected << rel << ld << w.value << w.log_value << w.error_bar
                << w.analytic_only;
    }
    o.results["rows"] = rows;
    // Recorded only: nothing forces monotonicity in k.
    o.results["gsecond_nondecreasing"] = nondecreasing;
    o.check("failure_ratio", worst <= 1e-12, worst, 1e-12);
    o.table = std::move(t);
    return o;
}

struct SearchArgs {
    std::string objective = "gprime";
    int budget = 200;
};

Outcome cmd_search(const Globals& g, const SearchArgs& sa) {
    Outcome o;
    if (sa.budget < 1) throw ArgumentError("--budget must be positive");
    auto ex = g.exponent_or("counterexample");
    auto e = parse_exponent(ex, g.defaults());
    auto obj = parse_objective(sa.objective);
    o.parameters = {{"exponent", ex}, {"objective", objective_name(obj)}, {"budget", sa.budget}, {"seed", g.seed}};
    auto r = adversarial_search(e, obj, sa.budget, g.seed, std::max(g.tol, 1e-8));
    o.results = {{"best_value", num(r.best_value)}, {"f", r.f_description}, {"g", r.g_description},
                 {"partition", r.partition_description}, {"evaluations", r.evaluations},
                 {"improvements", r.improvements}};
    o.check("lower_bound_at_least_one", r.best_value >= 1.0 - 1e-8, r.best_value, 1.0);

    Table t({"exponent", "objective", "budget", "seed", "best_value", "log_value", "evaluations", "partition", "f",
             "g"});
    t.row() << ex << objective_name(obj) << sa.budget << fmt17(static_cast<double>(g.seed)) << r.best_value
            << std::log(r.best_value) << r.evaluations << r.partition_description << r.f_description
            << r.g_description;
    o.table = std::move(t);
    return o;
}

struct VerifyArgs {
    std::vector<int> only;
    std::string oracle;
    std::string baseline;
};

Outcome cmd_verify(const Globals& g, const VerifyArgs& va) {
    Outcome o;
    AcceptanceOptions opts;
    opts.seed = g.seed;
    opts.oracle_path = va.oracle.empty() ? default_oracle_path() : va.oracle;
    opts.baseline_path = va.baseline.empty() ? default_baseline_path() : va.baseline;
    opts.only = va.only;
    o.parameters = {{"seed", g.seed}, {"only", va.only}};
    auto rs = run_acceptance(opts);
    json crit = json::array();
    Table t({"id", "name", "pass", "value", "threshold", "detail"});
    for (const auto& r : rs) {
        crit.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"value", num(r.value)},
                        {"threshold", num(r.threshold)}, {"detail", r.detail}, {"seconds", r.seconds},
                        {"limit_seconds", r.limit_seconds}});
        o.check("criterion_" + std::to_string(r.id) + "_" + r.name, r.pass, r.value, r.threshold);
        t.row() << r.id << r.name << r.pass << r.value << r.threshold << r.detail;
    }
    o.results["criteria"] = crit;
    o.table = std::move(t);
    return o;
}

json envelope(const std::string& command, const std::string& status) {
    return {{"schema_version", kSchemaVersion}, {"tool", "vexnorm"}, {"command", command}, {"status", status}};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app("Variable-exponent Lebesgue space experiments", "vexnorm");
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--tol", g.tol, "relative tolerance")->check(CLI::PositiveNumber);
    app.add_option("--n-max", g.n_max, "deepest ladder level")->check(CLI::Range(1, kMaxRepresentableLevel));
    app.add_option("--a", g.a, "lower level of 1/p");
    app.add_option("--b", g.b, "upper level of 1/p");
    app.add_option("--out", g.out, "CSV output file");
    app.add_option("--exponent", g.exponent, "named exponent");
    app.add_option("--function", g.function, "named function");

    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    NormArgs na;
    auto* s_norm = sub("norm", "norm and modular of a named function");
    s_norm->add_option("--lo", na.lo);
    s_norm->add_option("--hi", na.hi);
    s_norm->add_option("--c", na.c, "constant for the modular/norm implications");

    OscArgs oa;
    auto* s_osc = sub("oscillation", "gamma/eta moduli and the log coefficient");
    auto* s_ca = sub("condition-a", "condition A coefficient over scanned intervals");
    for (auto* s : {s_osc, s_ca}) {
        s->add_option("--depth", oa.depth, "dyadic scan depth")->check(CLI::Range(0, 24));
        s->add_option("--levels", oa.levels, "graded levels per structure point")->check(CLI::Range(0, 200));
    }
    s_osc->add_option("--radii", oa.radii, "radii 2^-i for i < N")->check(CLI::Range(1, 1000));
    s_osc->add_option("--mean-pairs", oa.mean_pairs)->check(CLI::Range(0, 100000));

    EstArgs ea;
    auto* s_est = sub("estimates", "G' and G'' ratio suites");
    s_est->add_option("--suite", ea.suite, "dyadic|random|breakpoints|full");
    s_est->add_flag("--averaging", ea.averaging, "also bound the averaging operator");

    MaxArgs ma;
    auto* s_max = sub("maximal", "sampled maximal function");
    s_max->add_option("--grid", ma.grid)->check(CLI::Range(2, 1 << 20));

    CeArgs ca;
    auto* s_ce = sub("counterexample", "failure ratio table and witnesses");
    s_ce->add_option("--k", ca.k, "deepest level")->check(CLI::Range(1, 64));
    s_ce->add_option("--support", ca.support, "witness support a|b");

    SearchArgs sa;
    auto* s_search = sub("search", "adversarial lower bounds");
    s_search->add_option("--objective", sa.objective, "gprime|gsecond|property_g");
    s_search->add_option("--budget", sa.budget);

    VerifyArgs va;
    auto* s_verify = sub("verify", "run the acceptance criteria");
    s_verify->add_option("--only", va.only, "criterion ids")->delimiter(',');
    s_verify->add_option("--oracle", va.oracle);
    s_verify->add_option("--baseline", va.baseline);

    sub("list", "named exponents and functions");

    std::vector<std::string> argv_s{"vexnorm"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_s) argv.push_back(s.c_str());

    std::string command;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "vexnorm: " << e.what() << "\n";
        auto j = envelope(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name(),
                          "usage_error");
        j["error"] = e.what();
        out << j.dump(2) << "\n";
        return kExitUsage;
    }
    command = app.get_subcommands().front()->get_name();

    Outcome o;
    auto fail = [&](const char* status, const std::string& what, int code) {
        err << "vexnorm " << command << ": " << what << "\n";
        auto j = envelope(command, status);
        j["error"] = what;
        out << j.dump(2) << "\n";
        return code;
    };
    try {
        if (command == "norm") o = cmd_norm(g, na);
        else if (command == "oscillation") o = cmd_oscillation(g, oa);
        else if (command == "estimates") o = cmd_estimates(g, ea);
        else if (command == "condition-a") o = cmd_condition_a(g, oa);
        else if (command == "maximal") o = cmd_maximal(g, ma);
        else if (command == "counterexample") o = cmd_counterexample(g, ca);
        else if (command == "search") o = cmd_search(g, sa);
        else if (command == "verify") o = cmd_verify(g, va);
        else {
            o.results = {{"exponents", exponent_names()}, {"functions", function_names()}};
        }
    } catch (const ArgumentError& e) {
        return fail("usage_error", e.what(), kExitUsage);
    } catch (const DomainError& e) {
        return fail("usage_error", e.what(), kExitUsage);
    } catch (const PreconditionError& e) {
        return fail("usage_error", e.what(), kExitUsage);
    } catch (const NumericError& e) {
        return fail("numeric_error", e.what(), kExitNumeric);
    } catch (const ResolutionError& e) {
        return fail("numeric_error", e.what(), kExitNumeric);
    } catch (const std::exception& e) {
        return fail("numeric_error", e.what(), kExitNumeric);
    }

    if (!g.out.empty() && o.table) {
        std::ofstream f(g.out, std::ios::binary);
        f << o.table->str();
        if (!f) return fail("usage_error", "cannot write " + g.out, kExitUsage);
    }

    bool ok = o.all_pass();
    auto j = envelope(command, ok ? "ok" : "check_failed");
    o.parameters["tol"] = g.tol;
    o.parameters["seed"] = g.seed;
    if (!o.parameters.contains("n_max")) o.parameters["n_max"] = g.n_max;
    j["parameters"] = o.parameters;
    j["results"] = o.results;
    j["checks"] = o.checks;
    j["csv"] = g.out.empty() ? json(nullptr) : json(g.out);
    out << j.dump(2) << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

} // namespace vexnorm
