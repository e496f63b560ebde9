#include "vexnorm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "panels.hpp"
#include "vexnorm/errors.hpp"

namespace vexnorm {

namespace {

using detail::Panel;
using detail::RuleResult;

struct Entry {
    Panel panel;
    RuleResult rule;
};

double neumaier(const std::vector<Entry>& es, bool errors) {
    double s = 0.0, c = 0.0;
    for (const auto& e : es) {
        double v = errors ? e.rule.error : e.rule.kronrod;
        double t = s + v;
        if (std::abs(s) >= std::abs(v)) c += (s - t) + v;
        else c += (v - t) + s;
        s = t;
    }
    return s + c;
}

RuleResult evaluate(const RealFunction& f, const Panel& p) {
    auto nodes = detail::node_loci(p);
    std::array<double, detail::kNodes> v;
    for (int i = 0; i < detail::kNodes; ++i) {
        double y = f(nodes[static_cast<std::size_t>(i)]);
        if (!std::isfinite(y))
            throw NumericError("integrate: non-finite value of " + f.name() + " at x=" +
                               std::to_string(nodes[static_cast<std::size_t>(i)].approx()));
        v[static_cast<std::size_t>(i)] = y;
    }
    return detail::apply_rule(p, v);
}

} // namespace

QuadratureResult integrate_detailed(const RealFunction& f, const Interval& e, const QuadratureOptions& opts) {
    if (!(opts.abs_tol > 0.0) && !(opts.rel_tol > 0.0))
        throw ArgumentError("integrate: need abs_tol > 0 or rel_tol > 0");
    auto panels = detail::initial_panels(e, f.structure_points(), f.traits().singularities);
    std::vector<Entry> entries;
    entries.reserve(panels.size() * 4);
    using Key = std::pair<double, std::size_t>;
    std::priority_queue<Key> heap;
    double total = 0.0, total_err = 0.0;
    auto push = [&](const Panel& p, std::size_t slot) {
        RuleResult r = evaluate(f, p);
        if (slot == entries.size()) entries.push_back({p, r});
        else entries[slot] = {p, r};
        total += r.kronrod;
        total_err += r.error;
        if (!r.at_floor) heap.push({r.error, slot});
    };
    for (const auto& p : panels) push(p, entries.size());

    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    std::size_t splits = 0;
    while (total_err > target() && !heap.empty()) {
        auto [err, slot] = heap.top();
        heap.pop();
        if (entries.size() >= opts.max_panels) {
            total = neumaier(entries, false);
            total_err = neumaier(entries, true);
            throw NumericError("integrate: panel budget exhausted for " + f.name(), total, total_err);
        }
        Panel left, right;
        if (!detail::split_panel(entries[slot].panel, left, right)) continue;
        total -= entries[slot].rule.kronrod;
        total_err -= entries[slot].rule.error;
        push(left, slot);
        push(right, entries.size());
        if (++splits % 512 == 0) {
            total = neumaier(entries, false);
            total_err = neumaier(entries, true);
        }
    }
    total = neumaier(entries, false);
    total_err = neumaier(entries, true);
    if (total_err > target()) {
        // Whatever is left is roundoff or unsplittable width-floor panels.
        double floor_err = 0.0;
        for (const auto& en : entries)
            if (en.rule.at_floor || !(en.panel.width() >= detail::kMinWidth)) floor_err += en.rule.error;
        if (total_err - floor_err > target())
            throw NumericError("integrate: tolerance not reached for " + f.name(), total, total_err);
    }
    return {total, total_err, entries.size()};
}

double integrate(const RealFunction& f, const Interval& e, double abs_tol, double rel_tol) {
    return integrate_detailed(f, e, {abs_tol, rel_tol, 1'000'000}).value;
}

double average(const RealFunction& f, const Interval& q, double tol) {
    LogScalar m = q.measure();
    double len = m.value();
    if (!(len >= detail::kMinWidth)) return f(q.midpoint());
    auto r = integrate_detailed(f, q, {tol * len, tol, 1'000'000});
    return r.value / len;
}

} // namespace vexnorm
