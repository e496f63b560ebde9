#include "vexnorm/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vexnorm/errors.hpp"
#include "vexnorm/parallel.hpp"
#include "vexnorm/quadrature.hpp"
#include "vexnorm/rng.hpp"
#include "vexnorm/zoo.hpp"

namespace vexnorm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double quad_tol_for(double tol) { return std::clamp(tol * 0.01, 1e-13, 1e-10); }

double log_add(double x, double y) {
    if (x == kNegInf) return y;
    if (y == kNegInf) return x;
    double hi = std::max(x, y), lo = std::min(x, y);
    return hi + std::log1p(std::exp(lo - hi));
}

// ln ||f chi_E||; -inf for zero.
double log_norm_on(const RealFunction& f, const Exponent& e, const Interval& q, double tol) {
    LogModular lm(&f, e, q, quad_tol_for(tol));
    auto r = solve_log_norm([&](double mu) { return lm.at(mu); }, e.p_minus(), e.p_plus(), tol);
    return r.value == 0.0 ? kNegInf : r.log_value;
}

[[noreturn]] void rethrow_for_cell(const NumericError& err, std::size_t i, const Interval& q) {
    throw NumericError("cell " + std::to_string(i) + " " + q.describe() + ": " + err.what(), err.estimate(),
                       err.error_bound());
}

std::vector<double> cell_log_norms(const RealFunction& f, const Partition& p, const Exponent& e, double tol) {
    std::vector<double> out(p.size(), kNegInf);
    parallel_for(p.size(), [&](std::size_t i) {
        try {
            out[i] = log_norm_on(f, e, p[i], tol);
        } catch (const NumericError& err) {
            rethrow_for_cell(err, i, p[i]);
        }
    });
    return out;
}

std::string describe_partition(const Partition& p) {
    std::ostringstream os;
    os << p.size() << " cells";
    if (p.size() <= 8) {
        os << ":";
        for (const auto& c : p.cells()) os << " " << c.describe();
    }
    return os.str();
}

} // namespace

// ---------------------------------------------------------------- StepNorm

struct StepNorm::State {
    Exponent e;
    double tol;
    std::vector<std::unique_ptr<LogModular>> chi;
    std::vector<double> log_chi;
};

StepNorm::StepNorm(const Partition& p, const Exponent& e, double tol)
    : s_(std::make_unique<State>(State{e, tol, {}, {}})) {
    if (!(tol > 0.0)) throw ArgumentError("StepNorm: tol must be positive");
    s_->chi.resize(p.size());
    s_->log_chi.assign(p.size(), std::numeric_limits<double>::quiet_NaN());
    parallel_for(p.size(), [&](std::size_t i) {
        try {
            s_->chi[i] = std::make_unique<LogModular>(nullptr, e, p[i], quad_tol_for(tol));
        } catch (const NumericError& err) {
            rethrow_for_cell(err, i, p[i]);
        }
    });
}

StepNorm::~StepNorm() = default;
StepNorm::StepNorm(StepNorm&&) noexcept = default;

std::size_t StepNorm::size() const { return s_->chi.size(); }

double StepNorm::log_char_norm(std::size_t i) {
    double& slot = s_->log_chi.at(i);
    if (std::isnan(slot)) {
        auto& lm = *s_->chi[i];
        slot = solve_log_norm([&](double mu) { return lm.at(mu); }, s_->e.p_minus(), s_->e.p_plus(), s_->tol)
                   .log_value;
    }
    return slot;
}

NormResult StepNorm::norm(std::span<const double> lv) {
    if (lv.size() != size()) throw ArgumentError("StepNorm: one value per cell required");
    bool any = std::any_of(lv.begin(), lv.end(), [](double v) { return v != kNegInf; });
    if (!any) return {0.0, kNegInf, 0.0, 0};
    auto phi = [&](double mu) {
        double total = kNegInf;
        std::vector<LogModular::Value> parts(lv.size(), {kNegInf, 0.0});
        for (std::size_t i = 0; i < lv.size(); ++i) {
            if (lv[i] == kNegInf) continue;
            parts[i] = s_->chi[i]->at(mu, lv[i]);
            total = log_add(total, parts[i].log_rho);
        }
        double slope = 0.0;
        for (const auto& v : parts)
            if (v.log_rho != kNegInf) slope += std::exp(v.log_rho - total) * v.slope;
        return LogModular::Value{total, slope};
    };
    return solve_log_norm(phi, s_->e.p_minus(), s_->e.p_plus(), s_->tol);
}

// ---------------------------------------------------------------- envelope

CellNorms cell_norms(const RealFunction& f, const Partition& p, const Exponent& e, double tol) {
    CellNorms out;
    out.log_f = cell_log_norms(f, p, e, tol);
    out.log_chi.assign(p.size(), 0.0);
    parallel_for(p.size(), [&](std::size_t i) { out.log_chi[i] = char_norm_detailed(e, p[i], tol).log_value; });
    return out;
}

RealFunction partition_envelope(const RealFunction& f, const Partition& p, const Exponent& e, double tol) {
    auto cn = cell_norms(f, p, e, tol);
    std::vector<double> vals(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        vals[i] = cn.log_f[i] == kNegInf ? 0.0 : std::exp(cn.log_f[i] - cn.log_chi[i]);
    return step_function(p, std::move(vals));
}

EnvelopeRatios envelope_ratios(const RealFunction& f, const Partition& p, const Exponent& e, double tol) {
    EnvelopeRatios r;
    r.log_f_norm = log_norm_on(f, e, kUnit, tol);
    if (r.log_f_norm == kNegInf) throw DomainError("envelope: ||f|| = 0");
    StepNorm sn(p, e, tol);
    auto lf = cell_log_norms(f, p, e, tol);
    std::vector<double> ls(p.size(), kNegInf);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (lf[i] != kNegInf) ls[i] = lf[i] - sn.log_char_norm(i);
    auto ns = sn.norm(ls);
    if (ns.value == 0.0) throw DomainError("envelope: S(f) = 0");
    r.log_envelope_norm = ns.log_value;
    r.gprime = std::exp(r.log_envelope_norm - r.log_f_norm);
    r.gsecond = std::exp(r.log_f_norm - r.log_envelope_norm);
    return r;
}

double gprime_ratio(const RealFunction& f, const Partition& p, const Exponent& e, double tol) {
    return envelope_ratios(f, p, e, tol).gprime;
}

double gsecond_ratio(const RealFunction& f, const Partition& p, const Exponent& e, double tol) {
    return envelope_ratios(f, p, e, tol).gsecond;
}

// ---------------------------------------------------------------- property G

PropertyGTerms property_g_terms(const RealFunction& f, const RealFunction& g, const Partition& p, const Exponent& e,
                                const std::optional<Exponent>& dual, double tol) {
    Exponent q = dual ? *dual : conjugate(e);
    double nf = log_norm_on(f, e, kUnit, tol);
    double ng = log_norm_on(g, q, kUnit, tol);
    if (nf == kNegInf || ng == kNegInf) throw DomainError("property_g_ratio: zero norm");
    auto lf = cell_log_norms(f, p, e, tol);
    auto lg = cell_log_norms(g, p, q, tol);
    PropertyGTerms out;
    out.log_terms.resize(p.size());
    double total = kNegInf;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out.log_terms[i] = lf[i] + lg[i];
        total = log_add(total, out.log_terms[i]);
    }
    out.log_ratio = total - nf - ng;
    out.ratio = std::exp(out.log_ratio);
    return out;
}

double property_g_ratio(const RealFunction& f, const RealFunction& g, const Partition& p, const Exponent& e,
                        const std::optional<Exponent>& dual, double tol) {
    return property_g_terms(f, g, p, e, dual, tol).ratio;
}

// ---------------------------------------------------------------- condition A, averaging

ConditionA condition_a_coefficient(const Exponent& e, const ScanConfig& scan, double tol) {
    if (!(e.p_minus() > 1.0)) throw DomainError("condition_a_coefficient: need p_minus > 1");
    Exponent q = conjugate(e);
    auto qs = scan_intervals(e.function(), scan);
    std::vector<double> vals(qs.size(), 0.0);
    parallel_for(qs.size(), [&](std::size_t i) {
        double lp = char_norm_detailed(e, qs[i], tol).log_value;
        double lq = char_norm_detailed(q, qs[i], tol).log_value;
        vals[i] = lp + lq - qs[i].measure().log();
    });
    ConditionA out;
    out.intervals = qs.size();
    double best = kNegInf;
    for (std::size_t i = 0; i < qs.size(); ++i)
        if (vals[i] > best) {
            best = vals[i];
            out.witness = qs[i];
        }
    out.value = std::exp(best);
    out.scanned = std::move(qs);
    out.log_ratio = std::move(vals);
    return out;
}

RealFunction averaging_operator(const RealFunction& f, const Partition& p, double tol) {
    auto af = absolute(f);
    std::vector<double> vals(p.size());
    parallel_for(p.size(), [&](std::size_t i) { vals[i] = average(af, p[i], tol); });
    return step_function(p, std::move(vals));
}

AveragingBound averaging_norm_bound(const Exponent& e, const std::vector<Partition>& partitions,
                                    const std::vector<RealFunction>& funcs, double tol) {
    if (partitions.empty() || funcs.empty()) throw ArgumentError("averaging_norm_bound: empty suite");
    std::vector<double> fn(funcs.size());
    parallel_for(funcs.size(), [&](std::size_t j) { fn[j] = log_norm_on(funcs[j], e, kUnit, tol); });
    std::vector<std::vector<double>> ratio(partitions.size(), std::vector<double>(funcs.size(), kNegInf));
    parallel_for(partitions.size(), [&](std::size_t i) {
        const Partition& p = partitions[i];
        StepNorm sn(p, e, tol);
        for (std::size_t j = 0; j < funcs.size(); ++j) {
            if (fn[j] == kNegInf) continue;
            auto af = absolute(funcs[j]);
            std::vector<double> lv(p.size());
            for (std::size_t c = 0; c < p.size(); ++c) {
                double m = average(af, p[c], tol);
                lv[c] = m > 0.0 ? std::log(m) : kNegInf;
            }
            auto nt = sn.norm(lv);
            ratio[i][j] = nt.value == 0.0 ? kNegInf : nt.log_value - fn[j];
        }
    });
    AveragingBound out;
    double best = kNegInf;
    for (std::size_t i = 0; i < partitions.size(); ++i)
        for (std::size_t j = 0; j < funcs.size(); ++j) {
            if (ratio[i][j] == kNegInf) continue;
            ++out.evaluated;
            if (ratio[i][j] > best) {
                best = ratio[i][j];
                out.partition = i;
                out.function = j;
            }
        }
    out.value = best == kNegInf ? 0.0 : std::exp(best);
    return out;
}

// ---------------------------------------------------------------- maximal function

SampledFunction maximal_function(const RealFunction& f, int grid_n, double tol) {
    if (grid_n < 2) throw ArgumentError("maximal_function: grid_n must be >= 2");
    const auto n = static_cast<std::size_t>(grid_n);
    SampledFunction out;
    out.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.x[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    out.x.back() = 1.0;
    auto af = absolute(f);
    std::vector<double> cell(n - 1);
    parallel_for(n - 1, [&](std::size_t i) {
        cell[i] = integrate(af, Interval(out.x[i], out.x[i + 1]), tol * (out.x[i + 1] - out.x[i]), tol);
    });
    std::vector<double> prefix(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) prefix[i + 1] = prefix[i] + cell[i];

    out.value.assign(n, 0.0);
    std::vector<double> suffix(n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        // suffix[k] = max over k' >= k of the average on [x_j, x_k'].
        double run = 0.0;
        for (std::size_t k = n - 1; k > j; --k) {
            run = std::max(run, (prefix[k] - prefix[j]) / (out.x[k] - out.x[j]));
            suffix[k] = run;
        }
        for (std::size_t i = j; i < n; ++i) out.value[i] = std::max(out.value[i], suffix[std::max(i, j + 1)]);
    }
    return out;
}

// ---------------------------------------------------------------- averaging bound, chi bounds

AverageBoundCheck exponent_average_check(const Exponent& e, const Interval& q, double t, double tol) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ArgumentError("exponent_average_check: need finite t >= 0");
    AverageBoundCheck out;
    if (t == 0.0) {
        out.log_lhs = out.log_rhs = kNegInf;
        out.pass = true;
        return out;
    }
    auto [pm, pp] = p_bounds(e, q);
    double pbar = harmonic_mean_exponent(e, q, tol);
    double lt = std::log(t);
    LogModular lm(nullptr, e, q, quad_tol_for(tol));
    out.log_lhs = lm.at(-lt).log_rho - q.measure().log();
    out.log_rhs = 2.0 * (pm - pp) + pbar * lt;
    out.lhs = std::exp(out.log_lhs);
    out.rhs = std::exp(out.log_rhs);
    out.pass = out.log_lhs >= out.log_rhs + std::log1p(-1e-9);
    return out;
}

CharNormBounds char_norm_bounds_check(const Exponent& e, const std::vector<Interval>& intervals, double tol) {
    if (intervals.empty()) throw ArgumentError("char_norm_bounds_check: no intervals");
    std::vector<double> lr(intervals.size());
    parallel_for(intervals.size(), [&](std::size_t i) {
        double pp = p_bounds(e, intervals[i]).second;
        lr[i] = char_norm_detailed(e, intervals[i], tol).log_value - intervals[i].measure().log() / pp;
    });
    CharNormBounds out;
    auto mn = std::min_element(lr.begin(), lr.end());
    auto mx = std::max_element(lr.begin(), lr.end());
    out.argmin = static_cast<std::size_t>(mn - lr.begin());
    out.argmax = static_cast<std::size_t>(mx - lr.begin());
    out.c3 = std::exp(*mn);
    out.c4 = std::exp(*mx);
    return out;
}

// ---------------------------------------------------------------- adversarial search

const char* objective_name(Objective o) {
    switch (o) {
    case Objective::gprime: return "gprime";
    case Objective::gsecond: return "gsecond";
    case Objective::property_g: return "property_g";
    }
    return "?";
}

Objective parse_objective(const std::string& s) {
    if (s == "gprime") return Objective::gprime;
    if (s == "gsecond") return Objective::gsecond;
    if (s == "property_g" || s == "property-g") return Objective::property_g;
    throw ArgumentError("unknown objective '" + s + "' (gprime, gsecond, property_g)");
}

namespace {

struct Proposal {
    Partition p{{Interval(0.0, 1.0)}};
    RealFunction f = constant_function(1.0);
    RealFunction g = constant_function(1.0);
    std::string f_desc = "1";
    std::string g_desc = "1";
    std::string p_desc;
};

std::vector<Locus> interior_breakpoints(const Exponent& e) {
    std::vector<Locus> out;
    for (const auto& b : e.breakpoints()) {
        double v = b.approx();
        if (v > 0.0 && v < 1.0) out.push_back(b);
    }
    sort_unique(out);
    return out;
}

Partition propose_partition(const Exponent& e, Rng& rng, std::string& desc) {
    auto bps = interior_breakpoints(e);
    int kind = static_cast<int>(rng.below(bps.empty() ? 2 : 3));
    if (kind == 0) {
        int depth = 1 + static_cast<int>(rng.below(6));
        desc = "dyadic:" + std::to_string(depth);
        return partition_dyadic(depth);
    }
    if (kind == 1) {
        int n = 2 + static_cast<int>(rng.below(15));
        desc = "random:" + std::to_string(n);
        return partition_random(n, 1e-3, rng.next());
    }
    std::vector<Locus> cuts;
    for (const auto& b : bps)
        if (rng.uniform() < 0.5) cuts.push_back(b);
    if (cuts.empty()) cuts.push_back(bps[rng.below(bps.size())]);
    desc = "breakpoints:" + std::to_string(cuts.size());
    return partition_from_cuts(cuts);
}

RealFunction propose_function(const Exponent& e, const Partition& p, Rng& rng, std::string& desc) {
    switch (rng.below(4)) {
    case 0: {
        const Interval& c = p[rng.below(p.size())];
        double w = signed_gap(c.lo(), c.hi());
        double u = rng.uniform(0.0, 0.9), v = rng.uniform(u + 0.05, 1.0);
        Locus lo = u == 0.0 ? c.lo() : shifted_by(c.lo(), u * w);
        Locus hi = v >= 1.0 ? c.hi() : shifted_by(c.lo(), v * w);
        if (!precedes(lo, hi)) {
            lo = c.lo();
            hi = c.hi();
        }
        Interval q(lo, hi, in_frame(hi, lo).base == lo.base && lo.base != 0.0
                               ? std::optional<LogScalar>(LogScalar::from_value((v - u) * w))
                               : std::nullopt);
        desc = "chi" + q.describe();
        return indicator(q);
    }
    case 1: {
        double alpha = rng.uniform(0.05, 0.95) / e.p_plus();
        std::ostringstream os;
        os.precision(6);
        os << "x^-" << alpha;
        desc = os.str();
        return power_function(alpha);
    }
    case 2: {
        std::vector<double> vals(p.size());
        for (auto& v : vals) v = rng.log_uniform(1e-2, 1e2);
        desc = "random step on " + std::to_string(p.size()) + " cells";
        return step_function(p, std::move(vals));
    }
    default: {
        auto entry = corpus_function(static_cast<int>(rng.below(kCorpusFamilies)), rng.next(), e.p_plus());
        desc = entry.family_name + " " + entry.description;
        return entry.f;
    }
    }
}

struct Plateau {
    Interval cell;
    bool top;
};

// Maximal runs between breakpoints on which p sits at p_plus (top) or p_minus.
std::vector<Plateau> plateaus(const Exponent& e) {
    auto pts = interior_breakpoints(e);
    pts.insert(pts.begin(), Locus::at(0.0));
    pts.push_back(Locus::at(1.0));
    std::vector<Plateau> out;
    auto level = [&](const Interval& q) -> int {
        double w = signed_gap(q.lo(), q.hi());
        double vals[3] = {e(shifted_by(q.lo(), 0.25 * w)), e(q.midpoint()), e(shifted_by(q.lo(), 0.75 * w))};
        for (int side : {1, -1}) {
            double target = side > 0 ? e.p_plus() : e.p_minus();
            bool all = true;
            for (double v : vals) all = all && std::abs(v - target) <= 1e-12 * target;
            if (all) return side;
        }
        return 0;
    };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!precedes(pts[i], pts[i + 1])) continue;
        Interval q(pts[i], pts[i + 1]);
        int lv = level(q);
        if (lv == 0) continue;
        bool top = lv > 0;
        if (!out.empty() && out.back().top == top && signed_gap(out.back().cell.hi(), q.lo()) == 0.0) {
            out.back().cell = Interval(out.back().cell.lo(), q.hi(), out.back().cell.measure() + q.measure());
            continue;
        }
        out.push_back({q, top});
    }
    return out;
}

bool plateau_pair_proposal(const Exponent& e, Rng& rng, Proposal& out) {
    auto pl = plateaus(e);
    // Pair each top plateau with the nearest bottom plateau to its left.
    std::vector<std::pair<Interval, Interval>> pairs;
    for (std::size_t i = 1; i < pl.size(); ++i)
        if (pl[i].top)
            for (std::size_t j = i; j-- > 0;)
                if (!pl[j].top) {
                    pairs.emplace_back(pl[i].cell, pl[j].cell);
                    break;
                }
    if (pairs.empty()) return false;
    std::reverse(pairs.begin(), pairs.end());
    std::size_t k = 1 + rng.below(pairs.size());
    LogScalar delta = pairs[0].first.measure();
    for (std::size_t i = 0; i < k; ++i) {
        delta = min(delta, pairs[i].first.measure());
        delta = min(delta, pairs[i].second.measure());
    }
    double dv = delta.value();
    if (!(dv > 1e-300)) return false;
    std::vector<Interval> fa, gb;
    std::vector<Locus> cuts;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& [top, bottom] = pairs[i];
        fa.emplace_back(top.lo(), shifted_by(top.lo(), dv), delta);
        gb.emplace_back(bottom.lo(), shifted_by(bottom.lo(), dv), delta);
        cuts.push_back(bottom.lo());
    }
    out.p = partition_from_cuts(cuts);
    out.f = indicator_union(fa);
    out.g = indicator_union(gb);
    out.f_desc = "chi(union of " + std::to_string(k) + " top-plateau cells)";
    out.g_desc = "chi(union of " + std::to_string(k) + " bottom-plateau cells)";
    out.p_desc = "plateau pairs:" + std::to_string(k);
    return true;
}

} // namespace

SearchResult adversarial_search(const Exponent& e, Objective objective, int budget, std::uint64_t seed, double tol) {
    if (budget < 1) throw ArgumentError("adversarial_search: budget must be >= 1");
    std::optional<Exponent> dual;
    if (objective == Objective::property_g && !(e.p_minus() > 1.0)) dual = e;

    auto evaluate = [&](const Proposal& pr, std::vector<double>* contrib) -> double {
        if (objective == Objective::property_g) {
            auto t = property_g_terms(pr.f, pr.g, pr.p, e, dual, tol);
            if (contrib) *contrib = t.log_terms;
            return t.ratio;
        }
        auto r = envelope_ratios(pr.f, pr.p, e, tol);
        if (contrib) *contrib = cell_log_norms(pr.f, pr.p, e, tol);
        return objective == Objective::gprime ? r.gprime : r.gsecond;
    };

    const int first = std::max(1, (2 * budget) / 3);
    std::vector<Proposal> props(static_cast<std::size_t>(first));
    std::vector<double> vals(props.size(), kNegInf);
    parallel_for(props.size(), [&](std::size_t i) {
        Rng rng(seed, i);
        Proposal pr;
        bool structured = objective == Objective::property_g && rng.uniform() < 0.4 && plateau_pair_proposal(e, rng, pr);
        if (!structured) {
            pr.p = propose_partition(e, rng, pr.p_desc);
            pr.f = propose_function(e, pr.p, rng, pr.f_desc);
            if (objective == Objective::property_g) pr.g = propose_function(e, pr.p, rng, pr.g_desc);
        }
        try {
            vals[i] = evaluate(pr, nullptr);
        } catch (const DomainError&) {
            vals[i] = kNegInf;
        }
        props[i] = std::move(pr);
    });

    SearchResult res;
    res.evaluations = first;
    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] > vals[best]) best = i;
    Proposal cur = props[best];
    double cur_v = vals[best];
    if (cur_v == kNegInf) {
        res.best_value = 0.0;
        res.partition_description = "none";
        return res;
    }

    Rng rng(seed, 0x636c696d62ULL);
    auto bps = interior_breakpoints(e);
    for (int step = first; step < budget; ++step) {
        std::vector<double> contrib;
        evaluate(cur, &contrib);
        std::size_t cell = static_cast<std::size_t>(std::max_element(contrib.begin(), contrib.end()) - contrib.begin());
        const Interval& q = cur.p[cell];
        std::optional<Locus> at;
        if (rng.uniform() < 0.5) {
            for (const auto& b : bps)
                if (precedes(q.lo(), b) && precedes(b, q.hi())) {
                    at = b;
                    break;
                }
        }
        if (!at) at = shifted_by(q.lo(), rng.uniform(0.2, 0.8) * signed_gap(q.lo(), q.hi()));
        Proposal next = cur;
        try {
            next.p = refine_cell(cur.p, cell, at);
            next.p_desc = cur.p_desc + " +split";
            double v = evaluate(next, nullptr);
            ++res.evaluations;
            if (v > cur_v) {
                cur = std::move(next);
                cur_v = v;
                ++res.improvements;
            }
        } catch (const ArgumentError&) {
            ++res.evaluations;
        }
    }
    res.best_value = cur_v;
    res.f_description = cur.f_desc;
    res.g_description = objective == Objective::property_g ? cur.g_desc : "";
    res.partition_description = cur.p_desc + " (" + describe_partition(cur.p) + ")";
    return res;
}

// ---------------------------------------------------------------- suite

EstimateSuite estimate_suite(const Exponent& e, std::uint64_t seed,
                             const std::vector<std::pair<std::string, Partition>>& extra) {
    EstimateSuite s;
    for (int d = 1; d <= 6; ++d) {
        s.partition_names.push_back("dyadic:" + std::to_string(d));
        s.partitions.push_back(partition_dyadic(d));
    }
    Rng rng(seed, 0x7375697465ULL);
    for (int i = 0; i < 10; ++i) {
        int n = 2 + static_cast<int>(rng.below(23));
        s.partition_names.push_back("random:" + std::to_string(i) + ":" + std::to_string(n));
        s.partitions.push_back(partition_random(n, 0.005, rng.next()));
    }
    auto bps = interior_breakpoints(e);
    if (!bps.empty()) {
        s.partition_names.push_back("breakpoints");
        s.partitions.push_back(partition_from_cuts(bps));
    }
    for (const auto& [name, p] : extra) {
        s.partition_names.push_back(name);
        s.partitions.push_back(p);
    }
    for (int m = 0; m < kSuiteMembers; ++m) {
        auto fs = corpus_suite(mix64(seed + 0x100ULL * static_cast<std::uint64_t>(m + 1)), e.p_plus());
        s.functions.insert(s.functions.end(), fs.begin(), fs.end());
    }
    return s;
}

std::vector<SuiteCase> run_envelope_suite(const Exponent& e, const EstimateSuite& suite, double tol) {
    const std::size_t nf = suite.functions.size(), np = suite.partitions.size();
    std::vector<double> fn(nf);
    parallel_for(nf, [&](std::size_t j) { fn[j] = log_norm_on(suite.functions[j].f, e, kUnit, tol); });
    std::vector<SuiteCase> out(np * nf);
    parallel_for(np, [&](std::size_t i) {
        const Partition& p = suite.partitions[i];
        StepNorm sn(p, e, tol);
        for (std::size_t j = 0; j < nf; ++j) {
            const auto& f = suite.functions[j].f;
            SuiteCase c{suite.partition_names[i], suite.functions[j].family_name, 0.0, 0.0, fn[j]};
            if (fn[j] == kNegInf) throw DomainError("suite: zero norm for " + f.name());
            std::vector<double> ls(p.size(), kNegInf);
            for (std::size_t k = 0; k < p.size(); ++k) {
                double l = log_norm_on(f, e, p[k], tol);
                if (l != kNegInf) ls[k] = l - sn.log_char_norm(k);
            }
            auto ns = sn.norm(ls);
            c.gprime = std::exp(ns.log_value - fn[j]);
            c.gsecond = std::exp(fn[j] - ns.log_value);
            out[i * nf + j] = c;
        }
    });
    return out;
}

} // namespace vexnorm
