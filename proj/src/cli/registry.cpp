#include "vexnorm/registry.hpp"

#include <cmath>
#include <sstream>

#include "vexnorm/corpus.hpp"
#include "vexnorm/errors.hpp"
#include "vexnorm/zoo.hpp"

namespace vexnorm {

namespace {

double number(const std::string& s, const std::string& ctx) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) throw ArgumentError(ctx + ": bad number '" + s + "'");
    return v;
}

std::vector<double> numbers(const std::string& s, const std::string& ctx) {
    std::vector<double> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(item, ctx));
    return out;
}

// "head:rest" -> {head, rest}; rest empty when there is no colon.
std::pair<std::string, std::string> split_head(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos) return {s, ""};
    return {s.substr(0, pos), s.substr(pos + 1)};
}

std::pair<double, double> level_pair(const std::string& args, const RegistryDefaults& d, const std::string& ctx) {
    auto v = numbers(args, ctx);
    if (v.empty()) return {d.a, d.b};
    if (v.size() != 2) throw ArgumentError(ctx + ": expected A,B");
    return {v[0], v[1]};
}

} // namespace

Exponent parse_exponent(const std::string& spec, const RegistryDefaults& d) {
    auto [head, rest] = split_head(spec);
    const std::string ctx = "exponent '" + spec + "'";
    if (head == "const") {
        auto v = numbers(rest, ctx);
        if (v.size() != 1) throw ArgumentError(ctx + ": expected const:P");
        return constant_exponent(v[0]);
    }
    if (head == "two-step") {
        auto v = numbers(rest, ctx);
        if (v.empty()) return two_step_exponent(2.0, 3.0, 0.5);
        if (v.size() == 2) return two_step_exponent(v[0], v[1]);
        if (v.size() == 3) return two_step_exponent(v[0], v[1], v[2]);
        throw ArgumentError(ctx + ": expected two-step:LO,HI[,AT]");
    }
    if (head == "linear") {
        auto v = numbers(rest, ctx);
        if (v.size() != 2) throw ArgumentError(ctx + ": expected linear:ALPHA,BETA");
        return linear_exponent(v[0], v[1]);
    }
    if (head == "loglog-clamped") {
        auto [a, b] = level_pair(rest, d, ctx);
        return loglog_clamped_exponent(a, b);
    }
    if (head == "sawtooth") {
        auto [a, b] = level_pair(rest, d, ctx);
        return sawtooth_exponent(a, b, d.n_max);
    }
    if (head == "counterexample") {
        auto [a, b] = level_pair(rest, d, ctx);
        return counterexample_exponent(a, b, d.n_max);
    }
    if (head == "shifted") {
        auto [c, inner] = split_head(rest);
        if (inner.empty()) throw ArgumentError(ctx + ": expected shifted:C:NAME");
        return shifted(parse_exponent(inner, d), number(c, ctx));
    }
    if (head == "conjugate-of") {
        if (rest.empty()) throw ArgumentError(ctx + ": expected conjugate-of:NAME");
        return conjugate(parse_exponent(rest, d));
    }
    throw ArgumentError("unknown exponent '" + spec + "'");
}

RealFunction parse_function(const std::string& spec, double q_plus, const RegistryDefaults& d) {
    auto [head, rest] = split_head(spec);
    const std::string ctx = "function '" + spec + "'";
    auto args = numbers(head == "corpus" ? "" : rest, ctx);
    auto need = [&](std::size_t n, const char* form) {
        if (args.size() != n) throw ArgumentError(ctx + ": expected " + form);
    };
    if (head == "one") return constant_function(1.0);
    if (head == "x") return identity_function();
    if (head == "loglog") return loglog_function();
    if (head == "g") return sawtooth_g(d.n_max);
    if (head == "const") {
        need(1, "const:C");
        return constant_function(args[0]);
    }
    if (head == "power") {
        need(1, "power:ALPHA");
        return power_function(args[0]);
    }
    if (head == "exp") {
        need(1, "exp:BETA");
        double beta = args[0];
        FunctionTraits t;
        t.monotone_pieces = true;
        return RealFunction("exp(" + rest + "x)", [beta](const Locus& x) { return std::exp(beta * x.approx()); }, t);
    }
    if (head == "indicator") {
        need(2, "indicator:LO,HI");
        return indicator(Interval(args[0], args[1]));
    }
    if (head == "interior-power") {
        need(2, "interior-power:S,ALPHA");
        return interior_power_function(args[0], args[1]);
    }
    if (head == "corpus") {
        auto [fam, seed] = split_head(rest);
        int family = static_cast<int>(number(fam, ctx));
        std::uint64_t s = seed.empty() ? d.seed : static_cast<std::uint64_t>(number(seed, ctx));
        return corpus_function(family, s, q_plus).f;
    }
    throw ArgumentError("unknown function '" + spec + "'");
}

std::optional<std::pair<double, double>> counterexample_levels(const std::string& spec, const RegistryDefaults& d) {
    auto [head, rest] = split_head(spec);
    if (head != "counterexample") return std::nullopt;
    return level_pair(rest, d, "exponent '" + spec + "'");
}

std::vector<std::string> exponent_names() {
    return {"const:P", "two-step[:LO,HI[,AT]]", "linear:ALPHA,BETA", "loglog-clamped[:A,B]", "sawtooth[:A,B]",
            "counterexample[:A,B]", "shifted:C:NAME", "conjugate-of:NAME"};
}

std::vector<std::string> function_names() {
    return {"one", "x", "loglog", "g", "const:C", "power:ALPHA", "exp:BETA", "indicator:LO,HI",
            "interior-power:S,ALPHA", "corpus:FAMILY[:SEED]"};
}

} // namespace vexnorm
