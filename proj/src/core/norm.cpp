#include "vexnorm/norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "panels.hpp"
#include "vexnorm/errors.hpp"
#include "vexnorm/quadrature.hpp"

namespace vexnorm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int N = detail::kNodes;

struct Sampled {
    detail::Panel panel;
    std::array<double, N> lf;
    std::array<double, N> pv;
};

} // namespace

struct LogModular::State {
    const RealFunction* f = nullptr;
    Exponent p;
    double rel_tol;
    std::size_t max_panels;
    std::vector<Sampled> panels;

    State(const RealFunction* f_, const Exponent& p_, double tol, std::size_t cap)
        : f(f_), p(p_), rel_tol(tol), max_panels(cap) {}

    Sampled sample(const detail::Panel& pan) const {
        Sampled s{pan, {}, {}};
        auto nodes = detail::node_loci(pan);
        for (int i = 0; i < N; ++i) {
            const auto& x = nodes[static_cast<std::size_t>(i)];
            double pv = p(x);
            if (!(pv >= 1.0) || !std::isfinite(pv))
                throw NumericError("modular: exponent " + p.name() + " is invalid at x=" + std::to_string(x.approx()));
            double lf = 0.0;
            if (f) {
                double v = std::abs((*f)(x));
                if (std::isnan(v)) throw NumericError("modular: NaN from " + f->name());
                lf = v == 0.0 ? kNegInf : std::log(v);
                if (lf == std::numeric_limits<double>::infinity())
                    throw NumericError("modular: " + f->name() + " is infinite at x=" + std::to_string(x.approx()));
            }
            s.lf[static_cast<std::size_t>(i)] = lf;
            s.pv[static_cast<std::size_t>(i)] = pv;
        }
        return s;
    }

    static double peak(const Sampled& s, double z) {
        double m = kNegInf;
        for (int i = 0; i < N; ++i) {
            double lf = s.lf[static_cast<std::size_t>(i)];
            if (lf != kNegInf) m = std::max(m, s.pv[static_cast<std::size_t>(i)] * (lf + z));
        }
        return m;
    }

    struct Contribution {
        detail::RuleResult rule;
        double slope;
    };

    static Contribution contribute(const Sampled& s, double z, double shift_m) {
        std::array<double, N> v;
        double slope = 0.0;
        double h = 0.5 * s.panel.width();
        for (int i = 0; i < N; ++i) {
            double lf = s.lf[static_cast<std::size_t>(i)];
            double e = lf == kNegInf ? 0.0 : std::exp(s.pv[static_cast<std::size_t>(i)] * (lf + z) - shift_m);
            v[static_cast<std::size_t>(i)] = e;
        }
        auto rule = detail::apply_rule(s.panel, v);
        // Kronrod weights for the slope integrand p*e.
        slope += detail::kWgk[7] * s.pv[0] * v[0];
        for (int j = 0; j < 7; ++j) {
            auto a = static_cast<std::size_t>(2 * j + 1), b = static_cast<std::size_t>(2 * j + 2);
            slope += detail::kWgk[static_cast<std::size_t>(j)] * (s.pv[a] * v[a] + s.pv[b] * v[b]);
        }
        return {rule, slope * h};
    }
};

LogModular::LogModular(const RealFunction* f, const Exponent& p, const Interval& e, double rel_tol,
                       std::size_t max_panels)
    : s_(std::make_unique<State>(f, p, rel_tol, max_panels)) {
    if (!(rel_tol > 0.0)) throw ArgumentError("LogModular: rel_tol must be positive");
    std::vector<Locus> cuts = p.function().structure_points();
    std::vector<Locus> singular;
    if (f) {
        auto fp = f->structure_points();
        cuts.insert(cuts.end(), fp.begin(), fp.end());
        singular = f->traits().singularities;
    }
    for (const auto& pan : detail::initial_panels(e, cuts, singular)) s_->panels.push_back(s_->sample(pan));
    if (s_->panels.empty()) throw ArgumentError("LogModular: domain " + e.describe() + " is below resolution");
}

LogModular::~LogModular() = default;
LogModular::LogModular(LogModular&&) noexcept = default;
LogModular& LogModular::operator=(LogModular&&) noexcept = default;

std::size_t LogModular::panels() const { return s_->panels.size(); }

LogModular::Value LogModular::at(double mu, double shift) {
    auto& st = *s_;
    const double z = shift - mu;
    for (;;) {
        double m = kNegInf;
        for (const auto& s : st.panels) m = std::max(m, State::peak(s, z));
        if (m == kNegInf) return {kNegInf, 0.0};

        std::vector<State::Contribution> parts;
        parts.reserve(st.panels.size());
        double total = 0.0, err = 0.0, slope = 0.0;
        using Key = std::pair<double, std::size_t>;
        std::priority_queue<Key> heap;
        for (std::size_t i = 0; i < st.panels.size(); ++i) {
            parts.push_back(State::contribute(st.panels[i], z, m));
            total += parts.back().rule.kronrod;
            err += parts.back().rule.error;
            slope += parts.back().slope;
            if (!parts.back().rule.at_floor) heap.push({parts.back().rule.error, i});
        }
        bool rescale = false;
        while (err > st.rel_tol * total && !heap.empty()) {
            auto [e, idx] = heap.top();
            heap.pop();
            detail::Panel l, r;
            if (!detail::split_panel(st.panels[idx].panel, l, r)) continue;
            if (st.panels.size() >= st.max_panels)
                throw NumericError("modular: panel budget exhausted", m + std::log(total), err / total);
            Sampled sl = st.sample(l), sr = st.sample(r);
            if (State::peak(sl, z) > m + 300.0 || State::peak(sr, z) > m + 300.0) rescale = true;
            total -= parts[idx].rule.kronrod;
            err -= parts[idx].rule.error;
            slope -= parts[idx].slope;
            st.panels[idx] = std::move(sl);
            st.panels.push_back(std::move(sr));
            parts[idx] = State::contribute(st.panels[idx], z, m);
            parts.push_back(State::contribute(st.panels.back(), z, m));
            for (std::size_t k : {idx, st.panels.size() - 1}) {
                total += parts[k].rule.kronrod;
                err += parts[k].rule.error;
                slope += parts[k].slope;
                if (!parts[k].rule.at_floor) heap.push({parts[k].rule.error, k});
            }
            if (rescale) break;
        }
        if (rescale) continue;
        // Re-add exactly to shed drift from the incremental updates.
        total = 0.0;
        slope = 0.0;
        for (const auto& c : parts) {
            total += c.rule.kronrod;
            slope += c.slope;
        }
        if (!(total > 0.0)) return {kNegInf, 0.0};
        return {m + std::log(total), -slope / total};
    }
}

NormResult solve_log_norm(const LogModularFn& phi, double p_minus, double p_plus, double tol) {
    if (!(tol > 0.0)) throw ArgumentError("norm: tol must be positive");
    NormResult out;
    auto v0 = phi(0.0);
    if (v0.log_rho == kNegInf) return {0.0, kNegInf, 0.0, 0};
    double l0 = v0.log_rho;
    if (!std::isfinite(l0)) throw NumericError("norm: modular is not finite at lambda = 1", l0, 0.0);
    double lo = l0 <= 0.0 ? l0 / p_minus : l0 / p_plus;
    double hi = l0 <= 0.0 ? l0 / p_plus : l0 / p_minus;
    LogModular::Value vlo = lo == 0.0 ? v0 : phi(lo);
    LogModular::Value vhi = hi == lo ? vlo : phi(hi);
    int expansions = 0;
    double step = std::max(1.0, hi - lo);
    while (vlo.log_rho < 0.0) {
        if (++expansions > 200) throw NumericError("norm: bracketing failed", std::exp(lo), 0.0);
        hi = lo;
        vhi = vlo;
        lo -= step;
        step *= 2.0;
        vlo = phi(lo);
    }
    step = std::max(1.0, hi - lo);
    while (vhi.log_rho > 0.0) {
        if (++expansions > 200) throw NumericError("norm: bracketing failed", std::exp(hi), 0.0);
        lo = hi;
        vlo = vhi;
        hi += step;
        step *= 2.0;
        vhi = phi(hi);
    }
    // Newton from the left end: the log-modular is convex and decreasing in mu,
    // so tangent steps from above the root stay below it.
    double mu = lo;
    LogModular::Value v = vlo;
    if (std::abs(vhi.log_rho) < std::abs(vlo.log_rho)) {
        mu = hi;
        v = vhi;
    }
    int it = 0;
    for (; it < 200; ++it) {
        if (std::abs(std::expm1(v.log_rho)) <= tol) break;
        if (hi - lo <= 1e-14 * std::max(1.0, std::abs(mu))) break;
        double next = v.slope < 0.0 ? mu - v.log_rho / v.slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        mu = next;
        v = phi(mu);
        if (v.log_rho > 0.0) lo = mu;
        else hi = mu;
    }
    out.log_value = mu;
    out.value = std::exp(mu);
    out.residual = std::expm1(v.log_rho);
    out.iterations = it;
    return out;
}

namespace {

double quad_tol_for(double tol) { return std::clamp(tol * 0.01, 1e-13, 1e-10); }

} // namespace

double modular(const RealFunction& f, const Exponent& p, const Interval& e, double tol) {
    LogModular lm(&f, p, e, std::clamp(tol, 1e-13, 1e-6));
    auto v = lm.at(0.0);
    return v.log_rho == kNegInf ? 0.0 : std::exp(v.log_rho);
}

NormResult luxemburg_norm_detailed(const RealFunction& f, const Exponent& p, const Interval& e, double tol) {
    if (!(tol > 0.0)) throw ArgumentError("luxemburg_norm: tol must be positive");
    LogModular lm(&f, p, e, quad_tol_for(tol));
    return solve_log_norm([&](double mu) { return lm.at(mu); }, p.p_minus(), p.p_plus(), tol);
}

double luxemburg_norm(const RealFunction& f, const Exponent& p, const Interval& e, double tol) {
    return luxemburg_norm_detailed(f, p, e, tol).value;
}

NormResult char_norm_detailed(const Exponent& p, const Interval& q, double tol) {
    if (!(tol > 0.0)) throw ArgumentError("char_norm: tol must be positive");
    LogScalar len = q.measure();
    if (p.is_constant()) {
        double lv = len.log() / p.p_minus();
        return {std::exp(lv), lv, 0.0, 0};
    }
    LogModular lm(nullptr, p, q, quad_tol_for(tol));
    return solve_log_norm([&](double mu) { return lm.at(mu); }, p.p_minus(), p.p_plus(), tol);
}

double char_norm(const Exponent& p, const Interval& q, double tol) { return char_norm_detailed(p, q, tol).value; }

Pairing associate_pairing(const RealFunction& f, const RealFunction& g, const Exponent& p, double tol) {
    if (!(p.p_minus() > 1.0)) throw DomainError("associate_pairing: need p_minus > 1");
    Pairing out;
    auto fg = absolute(product(f, g));
    out.pairing = integrate(fg, kUnit, tol, tol);
    double nf = luxemburg_norm(f, p, kUnit, tol);
    double ng = luxemburg_norm(g, conjugate(p), kUnit, tol);
    if (!(nf > 0.0) || !(ng > 0.0)) throw DomainError("associate_pairing: zero norm in the denominator");
    out.holder_defect = out.pairing / (nf * ng);
    return out;
}

ModularNormReport check_modular_norm_relations(const RealFunction& f, const Exponent& p, const Interval& e, double c,
                                               double tol) {
    if (!(c > 0.0)) throw ArgumentError("check_modular_norm_relations: C must be positive");
    ModularNormReport r;
    auto [pm, pp] = p_bounds(p, e);
    r.p_minus = pm;
    r.p_plus = pp;
    LogModular lm(&f, p, e, quad_tol_for(tol));
    auto v0 = lm.at(0.0);
    r.modular = v0.log_rho == kNegInf ? 0.0 : std::exp(v0.log_rho);
    auto nr = solve_log_norm([&](double mu) { return lm.at(mu); }, p.p_minus(), p.p_plus(), tol * 0.01);
    r.norm = nr.value;
    if (r.norm > 0.0) {
        auto vu = lm.at(nr.log_value);
        r.unit_residual = std::expm1(vu.log_rho);
        r.unit_modular = std::abs(r.unit_residual) <= tol;
    } else {
        r.unit_modular = r.modular == 0.0;
    }
    const double slack_tol = 1e-9;
    if (r.modular <= c) {
        r.modular_bound_applies = true;
        double bound = std::max(std::pow(c, 1.0 / pm), std::pow(c, 1.0 / pp));
        r.modular_bound_slack = bound - r.norm;
        r.modular_bound = r.norm <= bound * (1.0 + slack_tol);
    }
    if (r.norm <= c) {
        r.norm_bound_applies = true;
        double bound = std::max(std::pow(c, pp), std::pow(c, pm));
        r.norm_bound_slack = bound - r.modular;
        r.norm_bound = r.modular <= bound * (1.0 + slack_tol);
    }
    return r;
}

double embedding_defect(const RealFunction& f, const Exponent& p, const Exponent& q, double tol) {
    std::vector<Locus> probe;
    for (int i = 0; i <= 1024; ++i) probe.push_back(Locus::at(i / 1024.0));
    for (const auto* e : {&p, &q})
        for (const auto& b : e->breakpoints()) {
            probe.push_back(b);
            double w = std::max(std::abs(b.approx()), 1e-300) * 1e-9;
            probe.push_back(shifted_by(b, w));
            if (b.approx() > 0.0) probe.push_back(shifted_by(b, -w));
        }
    for (const auto& x : probe) {
        double a = x.approx();
        if (a < 0.0 || a > 1.0) continue;
        double px = 0.0, qx = 0.0;
        try {
            px = p(x);
            qx = q(x);
        } catch (const ResolutionError&) {
            continue; // a point below the ladder floor carries no measure
        }
        if (px > qx * (1.0 + 1e-12))
            throw PreconditionError("embedding_defect: p > q at x=" + std::to_string(a));
    }
    double np = luxemburg_norm(f, p, kUnit, tol);
    double nq = luxemburg_norm(f, q, kUnit, tol);
    if (!(nq > 0.0)) throw DomainError("embedding_defect: zero norm");
    return np / nq;
}

} // namespace vexnorm
