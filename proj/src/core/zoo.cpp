#include "vexnorm/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "vexnorm/errors.hpp"
#include "vexnorm/rng.hpp"

namespace vexnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

BreakpointLadder::BreakpointLadder(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw ArgumentError("BreakpointLadder: n_max must be >= 0");
    const int len = 2 * n_max + 3;
    const auto width = static_cast<std::size_t>(n_max + 2);
    std::vector<long> cur(width, 0);
    cur[0] = 2;
    coeffs_.push_back(cur);
    for (int m = 1; m < len; ++m) {
        int n = (m - 1) / 2;
        cur[static_cast<std::size_t>(n)] -= 1;
        cur[static_cast<std::size_t>(n + 1)] += 1;
        coeffs_.push_back(cur);
    }
    for (int m = 0; m < len; ++m) anchors_.push_back(combine(coeffs_[static_cast<std::size_t>(m)]).value());
}

LogScalar BreakpointLadder::combine(const std::vector<long>& coeff) const {
    std::vector<LogScalar> pos, neg;
    for (std::size_t j = 0; j < coeff.size(); ++j) {
        long k = coeff[j];
        if (k == 0) continue;
        LogScalar term = LogScalar::from_log(std::log(static_cast<double>(std::abs(k))) + log_d(static_cast<int>(j)));
        (k > 0 ? pos : neg).push_back(term);
    }
    return sum(pos).minus(sum(neg));
}

LogScalar BreakpointLadder::c(int m) const { return combine(coeffs_.at(static_cast<std::size_t>(m))); }

int BreakpointLadder::anchor_index(double base) const {
    if (base == 0.0) return -1;
    for (std::size_t m = 0; m < anchors_.size(); ++m)
        if (anchors_[m] == base) return static_cast<int>(m);
    return -1;
}

BreakpointLadder::IdentityReport BreakpointLadder::verify_identities() const {
    IdentityReport r;
    auto minus_d = [&](int m, int n) {
        auto k = coeffs_[static_cast<std::size_t>(m)];
        k[static_cast<std::size_t>(n)] -= 1;
        return combine(k);
    };
    for (int n = 0; n <= n_max_; ++n) {
        r.even_residual = std::max(r.even_residual, relative_difference(minus_d(2 * n, n), d(n)));
        r.odd_residual = std::max(r.odd_residual, relative_difference(minus_d(2 * n + 1, n), d(n + 1)));
    }
    double naive = 2.0 / std::numbers::e;
    for (int m = 1; m < size(); ++m) {
        int n = (m - 1) / 2;
        naive -= std::exp(log_d(n)) - std::exp(log_d(n + 1));
        LogScalar exact = c(m);
        if (exact.log() > std::log(std::numeric_limits<double>::min()))
            r.naive_drift = std::max(r.naive_drift, std::abs(naive / exact.value() - 1.0));
        if (!(c(m) < c(m - 1))) r.strictly_decreasing = false;
    }
    return r;
}

RealFunction loglog_function() {
    FunctionTraits t;
    t.singularities = {Locus::at(0.0)};
    t.breakpoints = {Locus::at(1.0 / std::numbers::e)};
    t.monotone_pieces = true;
    return RealFunction(
        "loglog",
        [](const Locus& x) {
            double v = x.approx();
            if (v < 0.0 || v > 1.0) throw DomainError("loglog: x outside [0,1]");
            if (v == 0.0) return kInf;
            double l = -std::log(v);
            return l > 1.0 ? std::log(l) : 0.0;
        },
        std::move(t));
}

namespace {

// g near ladder point m, at signed offset s from the exact c_m.
double sawtooth_local(int m, double s) {
    if (m % 2 == 1) {
        int n = (m - 1) / 2;
        double la = log_d(n + 1);
        double lt = la;
        if (s != 0.0) {
            double ls = std::log(std::abs(s));
            double hi = std::max(la, ls), lo = std::min(la, ls);
            lt = hi + std::log1p(std::exp(lo - hi));
        }
        return std::log(-lt) - n;
    }
    int n = m / 2;
    if (s <= 0.0) {
        double dn = std::exp(log_d(n));
        return std::log1p(-std::log1p(s / dn) * std::exp(-static_cast<double>(n)));
    }
    if (n == 0) return 0.0;
    double dp = std::exp(log_d(n - 1));
    return std::log1p(-std::log1p(-s / dp) * std::exp(-static_cast<double>(n - 1)));
}

// Admissible offsets of the local formula at m: the two adjacent branches.
bool local_range(int m, double s) {
    if (m % 2 == 1) {
        int n = (m - 1) / 2;
        double span = std::exp(log_d(n)) - std::exp(log_d(n + 1));
        return s > -span && s <= span;
    }
    int n = m / 2;
    double below = std::exp(log_d(n)) - std::exp(log_d(n + 1));
    double above = n == 0 ? 1.0 - 2.0 / std::numbers::e : std::exp(log_d(n - 1)) - std::exp(log_d(n));
    return s > -below && s <= above;
}

struct Sawtooth {
    std::shared_ptr<const BreakpointLadder> ladder;

    double operator()(const Locus& x) const {
        int top = 2 * ladder->n_max() + 2;
        int m = ladder->anchor_index(x.base);
        if (m >= 0 && m <= top && local_range(m, x.offset)) {
            if (m == top && x.offset <= 0.0) throw ResolutionError("sawtooth: point below the ladder depth");
            return sawtooth_local(m, x.offset);
        }
        double v = x.approx();
        if (v < 0.0 || v > 1.0) throw DomainError("sawtooth: x outside [0,1]");
        if (v >= ladder->anchor(0)) return sawtooth_local(0, v - ladder->anchor(0));
        double floor_anchor = ladder->anchor(top);
        if (v <= floor_anchor) throw ResolutionError("sawtooth: x = " + fmt(v) + " is below the ladder depth");
        // Anchors decrease with m; find the bracketing pair and take the nearer one.
        int lo = 0, hi = top;
        while (hi - lo > 1) {
            int mid = (lo + hi) / 2;
            if (ladder->anchor(mid) >= v) lo = mid;
            else hi = mid;
        }
        double dl = ladder->anchor(lo) - v;
        double dh = v - ladder->anchor(hi);
        int pick = dl <= dh ? lo : hi;
        if (pick == top && floor_anchor == 0.0) pick = lo;
        return sawtooth_local(pick, v - ladder->anchor(pick));
    }
};

std::vector<Locus> ladder_points(const BreakpointLadder& l) {
    std::vector<Locus> out;
    for (int m = 0; m < l.size(); ++m)
        if (l.anchor(m) > 0.0) out.push_back(Locus::anchored(l.anchor(m), 0.0));
    return out;
}

void check_level_pair(double a, double b, const char* who) {
    if (!(a > 0.0 && a < b && b < 1.0 && a + b < 1.0))
        throw ArgumentError(std::string(who) + ": need 0 < a < b < 1 and a + b < 1");
}

void check_depth(int n_max, double b, const char* who) {
    if (n_max < 1) throw ArgumentError(std::string(who) + ": n_max must be >= 1");
    if (n_max > kMaxRepresentableLevel || peak_offset(n_max, b).log() < std::log(std::numeric_limits<double>::min()))
        throw ArgumentError(std::string(who) + ": level " + std::to_string(n_max) +
                            " is not representable in double offsets; lower n_max");
}

} // namespace

RealFunction sawtooth_g(int n_max) {
    if (n_max < 1) throw ArgumentError("sawtooth_g: n_max must be >= 1");
    if (n_max > kMaxRepresentableLevel)
        throw ArgumentError("sawtooth_g: n_max above " + std::to_string(kMaxRepresentableLevel) +
                            " is not representable in doubles");
    auto ladder = std::make_shared<const BreakpointLadder>(n_max);
    FunctionTraits t;
    t.breakpoints = ladder_points(*ladder);
    t.essential_bound = 1.0;
    t.monotone_pieces = true;
    return RealFunction("sawtooth(" + std::to_string(n_max) + ")", Sawtooth{ladder}, std::move(t));
}

LogScalar peak_offset(int n, double level) {
    return double_exp(n + level).minus(LogScalar::from_log(log_d(n + 1)));
}

LogScalar level_a_length(int n, double a) {
    if (n < 1) throw ArgumentError("level_a_length: n must be >= 1");
    LogScalar left = LogScalar::from_log(log_d(n)).minus(double_exp(n + a));
    LogScalar right = LogScalar::from_log(log_d(n - 1)).minus(double_exp(n - 1 + a));
    return left + right;
}

LogScalar level_b_length(int n, double b) {
    if (n < 0) throw ArgumentError("level_b_length: n must be >= 0");
    return LogScalar::from_log(std::numbers::ln2) * peak_offset(n, b);
}

LevelSets level_sets(double a, double b, int n_max) {
    check_level_pair(a, b, "level_sets");
    check_depth(n_max, b, "level_sets");
    BreakpointLadder ladder(n_max);
    LevelSets out{a, b, n_max, {}, {}};
    auto peak = [&](int n) { return ladder.anchor(2 * n + 1); };
    for (int n = 0; n <= n_max; ++n) {
        double u = peak_offset(n, a).value();
        double w = peak_offset(n, b).value();
        if (n == 0) {
            double len = 1.0 - std::exp(log_d(0)) - double_exp(a).value();
            out.a_cells.emplace_back(Locus::anchored(peak(0), u), Locus::at(1.0), LogScalar::from_value(len));
        } else {
            double u_prev = peak_offset(n - 1, a).value();
            out.a_cells.emplace_back(Locus::anchored(peak(n), u), Locus::anchored(peak(n - 1), -u_prev),
                                     level_a_length(n, a));
        }
        out.b_cells.emplace_back(Locus::anchored(peak(n), -w), Locus::anchored(peak(n), w), level_b_length(n, b));
    }
    return out;
}

namespace {

Exponent clamped_reciprocal(std::string name, RealFunction g, double a, double b, std::vector<Locus> extra) {
    FunctionTraits t = g.traits();
    t.breakpoints.insert(t.breakpoints.end(), extra.begin(), extra.end());
    t.essential_bound = 1.0 / a;
    t.singularities.clear();
    RealFunction p(
        name,
        [g, a, b](const Locus& x) {
            double v = g(x);
            return 1.0 / std::min(std::max(v, a), b);
        },
        std::move(t));
    return Exponent(name, std::move(p), 1.0 / b, 1.0 / a);
}

} // namespace

Exponent counterexample_exponent(double a, double b, int n_max) {
    check_level_pair(a, b, "counterexample_exponent");
    check_depth(n_max, b, "counterexample_exponent");
    BreakpointLadder ladder(n_max);
    std::vector<Locus> extra;
    for (int n = 0; n <= n_max; ++n) {
        double base = ladder.anchor(2 * n + 1);
        for (double lv : {a, b}) {
            double off = peak_offset(n, lv).value();
            extra.push_back(Locus::anchored(base, -off));
            extra.push_back(Locus::anchored(base, off));
        }
    }
    return clamped_reciprocal("counterexample(" + fmt(a) + "," + fmt(b) + ")", sawtooth_g(n_max), a, b,
                              std::move(extra));
}

Exponent loglog_clamped_exponent(double a, double b) {
    if (!(a > 0.0 && a < b && b <= 1.0)) throw ArgumentError("loglog_clamped_exponent: need 0 < a < b <= 1");
    std::vector<Locus> extra = {Locus::at(double_exp(b).value()), Locus::at(double_exp(a).value())};
    return clamped_reciprocal("loglog-clamped(" + fmt(a) + "," + fmt(b) + ")", loglog_function(), a, b,
                              std::move(extra));
}

Exponent sawtooth_exponent(double a, double b, int n_max) {
    if (!(a > 0.0 && a < b && b <= 1.0)) throw ArgumentError("sawtooth_exponent: need 0 < a < b <= 1");
    auto g = sawtooth_g(n_max);
    FunctionTraits t = g.traits();
    t.essential_bound = 1.0 / a;
    std::string name = "sawtooth(" + fmt(a) + "," + fmt(b) + ")";
    RealFunction p(name, [g, a, b](const Locus& x) { return 1.0 / (a + (b - a) * g(x)); }, std::move(t));
    return Exponent(name, std::move(p), 1.0 / b, 1.0 / a);
}

Exponent constant_exponent(double p0) {
    if (!(p0 >= 1.0) || !std::isfinite(p0)) throw ArgumentError("constant_exponent: need 1 <= p0 < infinity");
    FunctionTraits t;
    t.essential_bound = p0;
    t.monotone_pieces = true;
    return Exponent("const:" + fmt(p0), RealFunction("const:" + fmt(p0), [p0](const Locus&) { return p0; }, t), p0,
                    p0);
}

Exponent two_step_exponent(double lo, double hi, double at) {
    if (!(at > 0.0 && at < 1.0)) throw ArgumentError("two_step_exponent: step must be interior");
    FunctionTraits t;
    t.breakpoints = {Locus::at(at)};
    t.monotone_pieces = true;
    t.essential_bound = std::max(lo, hi);
    std::string name = "two-step:" + fmt(lo) + ":" + fmt(hi);
    RealFunction p(name, [lo, hi, at](const Locus& x) { return x.approx() < at ? lo : hi; }, std::move(t));
    return Exponent(name, std::move(p), std::min(lo, hi), std::max(lo, hi));
}

Exponent linear_exponent(double alpha, double beta) {
    FunctionTraits t;
    t.monotone_pieces = true;
    std::string name = "linear:" + fmt(alpha) + ":" + fmt(beta);
    RealFunction p(name, [alpha, beta](const Locus& x) { return alpha + beta * x.approx(); }, std::move(t));
    return Exponent(name, std::move(p), std::min(alpha, alpha + beta), std::max(alpha, alpha + beta));
}

Exponent shifted(const Exponent& p, double c) {
    if (!(c >= 0.0)) throw ArgumentError("shifted: c must be >= 0");
    if (c == 0.0) return p;
    auto f = p.function();
    FunctionTraits t = f.traits();
    std::string name = "shift(" + p.name() + "," + fmt(c) + ")";
    RealFunction q(name, [f, c](const Locus& x) { return f(x) + c; }, std::move(t));
    return Exponent(name, std::move(q), p.p_minus() + c, p.p_plus() + c);
}

Exponent tilde_exponent(const Exponent& p, const Partition& cells) {
    std::vector<double> vals;
    double lo = kInf, hi = -kInf;
    for (const auto& q : cells.cells()) {
        double v = p_bounds(p, q).second;
        vals.push_back(v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    auto step = step_function(cells, vals);
    return Exponent("tilde(" + p.name() + ")", step, lo, hi);
}

double log_holder_defect(const Exponent& p, int n_pairs, std::uint64_t seed) {
    if (n_pairs < 1) throw ArgumentError("log_holder_defect: n_pairs must be >= 1");
    Rng rng(seed, 0x686f6c646572ULL);
    double best = 0.0;
    auto consider = [&](const Locus& x, const Locus& y) {
        double gap = std::abs(signed_gap(x, y));
        double xa = x.approx(), ya = y.approx();
        if (!(gap > 0.0) || xa < 0.0 || ya < 0.0 || xa > 1.0 || ya > 1.0) return;
        double v = std::abs((p(x) - p(y)) * std::log(gap));
        if (std::isfinite(v)) best = std::max(best, v);
    };
    for (int i = 0; i < n_pairs; ++i) consider(Locus::at(rng.uniform()), Locus::at(rng.uniform()));
    for (int i = 0; i < n_pairs; ++i) {
        double s = std::exp(-rng.uniform(0.0, 40.0));
        double x = rng.uniform(0.0, 1.0 - s);
        consider(Locus::at(x), Locus::at(x + s));
    }
    for (int k = 0; k <= 640; ++k) {
        double s = std::exp(-k / 16.0);
        if (s >= 1.0) continue;
        double x = rng.uniform(0.0, 1.0 - s);
        consider(Locus::at(x), Locus::at(x + s));
    }
    auto bps = p.breakpoints();
    for (std::size_t i = 0; i < bps.size(); ++i) {
        const Locus& b = bps[i];
        double left = i == 0 ? b.approx() : signed_gap(bps[i - 1], b);
        double right = i + 1 == bps.size() ? 1.0 - b.approx() : signed_gap(b, bps[i + 1]);
        for (int j = 1; j <= 40; ++j) {
            double f = std::ldexp(1.0, -2 * j);
            consider(shifted_by(b, -left * f), shifted_by(b, right * f));
            consider(shifted_by(b, -left * f), b);
            consider(b, shifted_by(b, right * f));
        }
        for (std::size_t k = i + 1; k < bps.size(); ++k) consider(b, bps[k]);
    }
    return best;
}

RealFunction constant_function(double c) {
    FunctionTraits t;
    t.essential_bound = std::abs(c);
    t.monotone_pieces = true;
    return RealFunction("const(" + fmt(c) + ")", [c](const Locus&) { return c; }, std::move(t));
}

RealFunction identity_function() {
    FunctionTraits t;
    t.essential_bound = 1.0;
    t.monotone_pieces = true;
    return RealFunction("x", [](const Locus& x) { return x.approx(); }, std::move(t));
}

RealFunction power_function(double alpha) {
    FunctionTraits t;
    t.monotone_pieces = true;
    if (alpha > 0.0) t.singularities = {Locus::at(0.0)};
    return RealFunction("x^-" + fmt(alpha),
                        [alpha](const Locus& x) {
                            double v = x.approx();
                            return v == 0.0 && alpha > 0.0 ? kInf : std::pow(v, -alpha);
                        },
                        std::move(t));
}

RealFunction interior_power_function(double s, double alpha) {
    FunctionTraits t;
    t.monotone_pieces = true;
    t.breakpoints = {Locus::at(s)};
    if (alpha > 0.0) t.singularities = {Locus::at(s)};
    return RealFunction("|x-" + fmt(s) + "|^-" + fmt(alpha),
                        [s, alpha](const Locus& x) {
                            double d = std::abs(signed_gap(Locus::at(s), x));
                            return d == 0.0 && alpha > 0.0 ? kInf : std::pow(d, -alpha);
                        },
                        std::move(t));
}

RealFunction indicator(const Interval& q) { return indicator_union({q}); }

RealFunction indicator_union(std::vector<Interval> cells) {
    std::sort(cells.begin(), cells.end(), [](const Interval& x, const Interval& y) { return precedes(x.lo(), y.lo()); });
    for (std::size_t i = 1; i < cells.size(); ++i)
        if (signed_gap(cells[i - 1].hi(), cells[i].lo()) < 0.0)
            throw ArgumentError("indicator_union: cells overlap");
    FunctionTraits t;
    for (const auto& c : cells) {
        t.breakpoints.push_back(c.lo());
        t.breakpoints.push_back(c.hi());
    }
    t.essential_bound = 1.0;
    t.monotone_pieces = true;
    std::string name = cells.size() == 1 ? "chi" + cells[0].describe() : "chi(" + std::to_string(cells.size()) + " cells)";
    auto shared = std::make_shared<const std::vector<Interval>>(std::move(cells));
    return RealFunction(
        name,
        [shared](const Locus& x) {
            const auto& cs = *shared;
            auto it = std::upper_bound(cs.begin(), cs.end(), x,
                                       [](const Locus& v, const Interval& c) { return precedes(v, c.lo()); });
            if (it == cs.begin()) return 0.0;
            --it;
            return it->contains(x) ? 1.0 : 0.0;
        },
        std::move(t));
}

RealFunction step_function(const Partition& p, std::vector<double> values) {
    if (values.size() != p.size()) throw ArgumentError("step_function: one value per cell required");
    FunctionTraits t;
    t.breakpoints = p.cuts();
    t.monotone_pieces = true;
    double bound = 0.0;
    for (double v : values) bound = std::max(bound, std::abs(v));
    t.essential_bound = bound;
    auto part = std::make_shared<const Partition>(p);
    auto vals = std::make_shared<const std::vector<double>>(std::move(values));
    return RealFunction("step(" + std::to_string(p.size()) + ")",
                        [part, vals](const Locus& x) { return (*vals)[part->locate(x)]; }, std::move(t));
}

} // namespace vexnorm
