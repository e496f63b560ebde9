#include "vexnorm/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vexnorm/errors.hpp"
#include "vexnorm/quadrature.hpp"

namespace vexnorm {

RealFunction::RealFunction(std::string name, Evaluator eval, FunctionTraits traits) {
    if (!eval) throw ArgumentError("RealFunction: empty evaluator");
    sort_unique(traits.breakpoints);
    sort_unique(traits.singularities);
    impl_ = std::make_shared<const Impl>(Impl{std::move(name), std::move(eval), std::move(traits)});
}

std::vector<Locus> RealFunction::structure_points() const {
    std::vector<Locus> pts = traits().breakpoints;
    pts.insert(pts.end(), traits().singularities.begin(), traits().singularities.end());
    sort_unique(pts);
    return pts;
}

Exponent::Exponent(std::string name, RealFunction p, double p_minus, double p_plus)
    : name_(std::move(name)), p_(std::move(p)), p_minus_(p_minus), p_plus_(p_plus) {
    if (!(p_minus >= 1.0)) throw ArgumentError("Exponent " + name_ + ": p_minus must be >= 1");
    if (!(p_plus >= p_minus) || !std::isfinite(p_plus))
        throw ArgumentError("Exponent " + name_ + ": need p_minus <= p_plus < infinity");
}

RealFunction Exponent::reciprocal() const {
    auto p = p_;
    FunctionTraits t = p_.traits();
    t.essential_bound = 1.0 / p_minus_;
    return RealFunction("1/(" + name() + ")", [p](const Locus& x) { return 1.0 / p(x); }, std::move(t));
}

FunctionTraits merged_traits(const RealFunction& f, const RealFunction& g) {
    FunctionTraits t;
    t.breakpoints = f.traits().breakpoints;
    t.breakpoints.insert(t.breakpoints.end(), g.traits().breakpoints.begin(), g.traits().breakpoints.end());
    t.singularities = f.traits().singularities;
    t.singularities.insert(t.singularities.end(), g.traits().singularities.begin(), g.traits().singularities.end());
    return t;
}

RealFunction product(const RealFunction& f, const RealFunction& g) {
    auto t = merged_traits(f, g);
    if (f.traits().essential_bound && g.traits().essential_bound)
        t.essential_bound = *f.traits().essential_bound * *g.traits().essential_bound;
    return RealFunction("(" + f.name() + ")*(" + g.name() + ")",
                        [f, g](const Locus& x) {
                            double a = f(x);
                            return a == 0.0 ? 0.0 : a * g(x);
                        },
                        std::move(t));
}

RealFunction scaled(const RealFunction& f, double c) {
    FunctionTraits t = f.traits();
    if (t.essential_bound) t.essential_bound = std::abs(c) * *t.essential_bound;
    return RealFunction(std::to_string(c) + "*(" + f.name() + ")", [f, c](const Locus& x) { return c * f(x); },
                        std::move(t));
}

RealFunction sum(const RealFunction& f, const RealFunction& g) {
    auto t = merged_traits(f, g);
    return RealFunction("(" + f.name() + ")+(" + g.name() + ")", [f, g](const Locus& x) { return f(x) + g(x); },
                        std::move(t));
}

RealFunction absolute(const RealFunction& f) {
    FunctionTraits t = f.traits();
    t.monotone_pieces = false;
    return RealFunction("|" + f.name() + "|", [f](const Locus& x) { return std::abs(f(x)); }, std::move(t));
}

std::vector<Interval> structure_pieces(const Interval& q, const std::vector<Locus>& points) {
    std::vector<Locus> inner;
    for (const auto& p : points)
        if (signed_gap(q.lo(), p) > 0.0 && signed_gap(p, q.hi()) > 0.0) inner.push_back(p);
    sort_unique(inner);
    std::vector<Interval> out;
    Locus prev = q.lo();
    for (const auto& p : inner) {
        out.emplace_back(prev, p);
        prev = p;
    }
    if (out.empty()) return {q};
    out.emplace_back(prev, q.hi());
    return out;
}

namespace {

// A point a fraction `t` of the way into the piece from one end, written
// in that end's frame. Falls back to the midpoint if the frame cannot
// resolve the step.
Locus inside(const Interval& piece, double t, bool from_lo) {
    double w = signed_gap(piece.lo(), piece.hi());
    const Locus& end = from_lo ? piece.lo() : piece.hi();
    double step = (from_lo ? 1.0 : -1.0) * w * t;
    Locus x = shifted_by(end, step);
    if (x.offset == end.offset) return piece.midpoint();
    return x;
}

bool is_singular(const RealFunction& f, const Locus& x) {
    for (const auto& s : f.traits().singularities)
        if (signed_gap(s, x) == 0.0) return true;
    return false;
}

} // namespace

std::pair<double, double> essential_range(const RealFunction& f, const Interval& q) {
    auto pieces = structure_pieces(q, f.structure_points());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto take = [&](const Locus& x) {
        double v = f(x);
        if (std::isnan(v)) throw NumericError("essential_range: NaN from " + f.name());
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    const int base_samples = std::max(64, 4096 / static_cast<int>(pieces.size()));
    for (const auto& piece : pieces) {
        bool sing_lo = is_singular(f, piece.lo());
        bool sing_hi = is_singular(f, piece.hi());
        // Approach singular ends geometrically; smooth ends need one probe.
        for (int side = 0; side < 2; ++side) {
            bool from_lo = side == 0;
            bool sing = from_lo ? sing_lo : sing_hi;
            if (sing) {
                double w = signed_gap(piece.lo(), piece.hi());
                for (double t = 0.25; t * w > 1e-300; t *= 0.25) take(inside(piece, t, from_lo));
            } else {
                take(inside(piece, 0x1.0p-40, from_lo));
            }
        }
        if (f.traits().monotone_pieces) continue;
        for (int i = 1; i < base_samples; ++i) take(inside(piece, static_cast<double>(i) / base_samples, true));
        for (double t = 0.25; t > 0x1.0p-60; t *= 0.25) {
            take(inside(piece, t, true));
            take(inside(piece, t, false));
        }
    }
    return {lo, hi};
}

std::pair<double, double> p_bounds(const Exponent& p, const Interval& q) {
    if (p.is_constant()) return {p.p_minus(), p.p_plus()};
    auto [lo, hi] = essential_range(p.function(), q);
    return {std::max(lo, p.p_minus()), std::min(hi, p.p_plus())};
}

double harmonic_mean_exponent(const Exponent& p, const Interval& q, double tol) {
    if (!(tol > 0.0)) throw ArgumentError("harmonic_mean_exponent: tol must be positive");
    if (p.is_constant()) return p.p_minus();
    double mean_recip = average(p.reciprocal(), q, tol);
    return 1.0 / mean_recip;
}

Exponent conjugate(const Exponent& p) {
    if (!(p.p_minus() > 1.0)) throw DomainError("conjugate: p_minus = 1, the conjugate exponent is unbounded");
    auto base = p.function();
    FunctionTraits t = base.traits();
    double cm = p.p_plus() / (p.p_plus() - 1.0);
    double cp = p.p_minus() / (p.p_minus() - 1.0);
    t.essential_bound = cp;
    RealFunction f(
        "conj(" + p.name() + ")",
        [base](const Locus& x) {
            double v = base(x);
            return v / (v - 1.0);
        },
        std::move(t));
    return Exponent("conj(" + p.name() + ")", std::move(f), cm, cp);
}

} // namespace vexnorm
