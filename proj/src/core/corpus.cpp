#include "vexnorm/corpus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vexnorm/errors.hpp"
#include "vexnorm/rng.hpp"
#include "vexnorm/zoo.hpp"

namespace vexnorm {

namespace {

constexpr const char* kNames[kCorpusFamilies] = {
    "constant", "linear",  "power",       "loglog",         "indicator",        "step",
    "oscillatory", "exponential", "interior_power", "log", "piecewise_linear", "sparse_step"};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

Partition random_cells(Rng& rng, int n) { return partition_random(n, 0.02, rng.next()); }

} // namespace

const char* corpus_family_name(int family) {
    if (family < 0 || family >= kCorpusFamilies) throw ArgumentError("corpus: unknown family");
    return kNames[family];
}

CorpusEntry corpus_function(int family, std::uint64_t seed, double q_plus) {
    if (!(q_plus >= 1.0)) throw ArgumentError("corpus_function: q_plus must be >= 1");
    Rng rng(seed, static_cast<std::uint64_t>(family) + 0x636f72707573ULL);
    CorpusEntry e{family, corpus_family_name(family), "", constant_function(1.0)};
    // Largest power exponent with alpha * q_plus < 1, kept clear of the edge.
    const double alpha_cap = 0.9 / q_plus;
    switch (family) {
    case 0: {
        double c = rng.uniform(0.5, 2.0);
        e.f = constant_function(c);
        e.description = "c=" + num(c);
        break;
    }
    case 1: {
        double a = rng.uniform(0.1, 1.0), b = rng.uniform(-0.09, 2.0);
        FunctionTraits t;
        t.monotone_pieces = true;
        e.f = RealFunction("linear", [a, b](const Locus& x) { return a + b * x.approx(); }, t);
        e.description = num(a) + "+" + num(b) + "x";
        break;
    }
    case 2: {
        double alpha = rng.uniform(0.05, 1.0) * alpha_cap;
        e.f = power_function(alpha);
        e.description = "x^-" + num(alpha);
        break;
    }
    case 3: {
        double c = rng.uniform(0.5, 2.0);
        e.f = scaled(loglog_function(), c);
        e.description = num(c) + "*loglog";
        break;
    }
    case 4: {
        double u = rng.uniform(0.0, 0.8);
        double w = rng.uniform(0.05, 1.0 - u);
        e.f = indicator(Interval(u, std::min(1.0, u + w)));
        e.description = "chi[" + num(u) + "," + num(u + w) + "]";
        break;
    }
    case 5:
    case 11: {
        int n = 3 + static_cast<int>(rng.below(6));
        auto cells = random_cells(rng, n);
        std::vector<double> vals;
        for (int i = 0; i < n; ++i) {
            double v = rng.uniform(0.1, 3.0);
            if (family == 11 && rng.uniform() < 0.5) v = 0.0;
            vals.push_back(v);
        }
        if (family == 11) vals[rng.below(static_cast<std::uint64_t>(n))] = rng.uniform(0.5, 2.0);
        e.f = step_function(cells, vals);
        e.description = std::to_string(n) + " steps";
        break;
    }
    case 6: {
        int m = 1 + static_cast<int>(rng.below(8));
        double amp = rng.uniform(0.2, 1.4);
        e.f = RealFunction("oscillatory",
                           [m, amp](const Locus& x) { return 1.5 + amp * std::sin(2.0 * std::numbers::pi * m * x.approx()); });
        e.description = "1.5+" + num(amp) + "sin(2pi*" + std::to_string(m) + "x)";
        break;
    }
    case 7: {
        double beta = rng.uniform(-3.0, 3.0);
        FunctionTraits t;
        t.monotone_pieces = true;
        e.f = RealFunction("exp", [beta](const Locus& x) { return std::exp(beta * x.approx()); }, t);
        e.description = "exp(" + num(beta) + "x)";
        break;
    }
    case 8: {
        double s = rng.uniform(0.1, 0.9);
        double alpha = rng.uniform(0.05, 1.0) * alpha_cap;
        e.f = interior_power_function(s, alpha);
        e.description = "|x-" + num(s) + "|^-" + num(alpha);
        break;
    }
    case 9: {
        double c = rng.uniform(0.3, 1.5);
        FunctionTraits t;
        t.singularities = {Locus::at(0.0)};
        t.monotone_pieces = true;
        e.f = RealFunction("log", [c](const Locus& x) {
            double v = x.approx();
            return v == 0.0 ? std::numeric_limits<double>::infinity() : -c * std::log(v);
        }, t);
        e.description = num(c) + "*ln(1/x)";
        break;
    }
    case 10: {
        int knots = 5;
        std::vector<double> xs = {0.0}, ys;
        for (int i = 1; i < knots; ++i) xs.push_back((i + rng.uniform(-0.3, 0.3)) / knots);
        xs.push_back(1.0);
        for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(rng.uniform(0.0, 2.0));
        FunctionTraits t;
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) t.breakpoints.push_back(Locus::at(xs[i]));
        t.monotone_pieces = true;
        e.f = RealFunction("piecewise_linear",
                           [xs, ys](const Locus& x) {
                               double v = x.approx();
                               std::size_t i = 1;
                               while (i + 1 < xs.size() && v > xs[i]) ++i;
                               double t0 = (v - xs[i - 1]) / (xs[i] - xs[i - 1]);
                               return ys[i - 1] + t0 * (ys[i] - ys[i - 1]);
                           },
                           t);
        e.description = "piecewise linear, 5 knots";
        break;
    }
    default:
        throw ArgumentError("corpus: unknown family");
    }
    return e;
}

std::vector<CorpusEntry> corpus_suite(std::uint64_t seed, double q_plus) {
    std::vector<CorpusEntry> out;
    for (int k = 0; k < kCorpusFamilies; ++k) out.push_back(corpus_function(k, mix64(seed + static_cast<std::uint64_t>(k)), q_plus));
    return out;
}

} // namespace vexnorm
