#include "vexnorm/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vexnorm/errors.hpp"
#include "vexnorm/parallel.hpp"
#include "vexnorm/quadrature.hpp"

namespace vexnorm {

namespace {

constexpr double kTiny = 1e-300;

struct Emitter {
    std::vector<Interval>& out;

    // [t + from, t + to] in the frame of t, clipped to [0, 1].
    void around(const Locus& t, double from, double to, double room_left, double room_right) {
        if (-from > room_left || to > room_right) return;
        Locus lo = -from >= room_left ? Locus::at(0.0) : shifted_by(t, from);
        Locus hi = to >= room_right ? Locus::at(1.0) : shifted_by(t, to);
        double len = to - from;
        if (!(len > kTiny)) return;
        // Below ulp of the offset the endpoints no longer carry the length.
        double width = signed_gap(lo, hi);
        if (!(std::abs(width - len) <= 1e-9 * len)) return;
        bool same_frame = lo.base == hi.base;
        if (same_frame) out.emplace_back(lo, hi, LogScalar::from_value(len));
        else out.emplace_back(lo, hi);
    }
};

} // namespace

double log_weight(double log_length) {
    double x = 1.0, y = -log_length;
    double hi = std::max(x, y), lo = std::min(x, y);
    return hi + std::log1p(std::exp(lo - hi));
}

std::vector<Interval> scan_intervals(const RealFunction& f, const ScanConfig& scan) {
    if (scan.dyadic_depth < 0 || scan.dyadic_depth > 30) throw ArgumentError("scan: dyadic depth must be in [0, 30]");
    if (!(scan.ratio > 0.0 && scan.ratio < 1.0)) throw ArgumentError("scan: ratio must be in (0, 1)");
    std::vector<Interval> out;
    for (int j = 0; j <= scan.dyadic_depth; ++j) {
        double w = std::ldexp(1.0, -j);
        long cells = 1L << j;
        for (long k = 0; k < cells; ++k) out.emplace_back(static_cast<double>(k) * w, static_cast<double>(k + 1) * w);
    }

    std::vector<Locus> pts;
    for (const auto& t : f.structure_points()) {
        double v = t.approx();
        if (v >= 0.0 && v <= 1.0) pts.push_back(t);
    }
    sort_unique(pts);
    Emitter emit{out};
    const Locus zero = Locus::at(0.0), one = Locus::at(1.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        // A double is its own exact anchor; framing it keeps tiny offsets exact.
        const Locus t = pts[i].absolute() && pts[i].offset > 0.0 ? Locus::anchored(pts[i].offset, 0.0) : pts[i];
        double room_left = signed_gap(zero, t), room_right = signed_gap(t, one);
        double gl = i > 0 ? signed_gap(pts[i - 1], t) : room_left;
        double gr = i + 1 < pts.size() ? signed_gap(t, pts[i + 1]) : room_right;
        double step = 1.0;
        for (int j = 0; j <= scan.graded_levels; ++j, step *= scan.ratio) {
            emit.around(t, 0.0, step, room_left, room_right);
            emit.around(t, -step, 0.0, room_left, room_right);
            if (scan.gap_relative && j > 0) {
                if (gr > 0.0) emit.around(t, 0.0, gr * step, room_left, room_right);
                if (gl > 0.0) emit.around(t, -gl * step, 0.0, room_left, room_right);
            }
        }
        if (gl > 0.0 && gr > 0.0) {
            double si = 1.0;
            for (int a = 0; a <= scan.span_levels; ++a, si *= scan.ratio) {
                double sj = 1.0;
                for (int b = 0; b <= scan.span_levels; ++b, sj *= scan.ratio)
                    emit.around(t, -gl * si, gr * sj, room_left, room_right);
            }
        }
    }
    std::vector<Locus> ends = pts;
    ends.push_back(zero);
    ends.push_back(one);
    sort_unique(ends);
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = i + 1; j < ends.size(); ++j)
            if (signed_gap(ends[i], ends[j]) > kTiny) out.emplace_back(ends[i], ends[j]);
    return out;
}

std::vector<OscillationSample> scan_oscillation(const RealFunction& f, const ScanConfig& scan,
                                                bool with_mean_oscillation) {
    auto qs = scan_intervals(f, scan);
    std::vector<OscillationSample> out(qs.size(), OscillationSample{Interval(0.0, 1.0), 0.0, 0.0, 0.0});
    parallel_for(qs.size(), [&](std::size_t i) {
        const Interval& q = qs[i];
        OscillationSample s{q, 0.0, 0.0, std::numeric_limits<double>::quiet_NaN()};
        s.mean = average(f, q, scan.tol);
        s.essinf = essential_range(f, q).first;
        if (with_mean_oscillation) {
            double m = s.mean;
            FunctionTraits t = f.traits();
            t.monotone_pieces = false;
            RealFunction dev("dev", [f, m](const Locus& x) { return std::abs(f(x) - m); }, std::move(t));
            s.mean_oscillation = average(dev, q, scan.tol);
        }
        out[i] = s;
    });
    return out;
}

double bmo_modulus(const RealFunction& f, double r, const ScanConfig& scan) {
    if (!(r > 0.0 && r <= 1.0)) throw ArgumentError("bmo_modulus: need 0 < r <= 1");
    auto prof = oscillation_profile(scan_oscillation(f, scan, true), {r});
    return prof.gamma[0];
}

double blo_modulus(const RealFunction& f, double r, const ScanConfig& scan) {
    if (!(r > 0.0 && r <= 1.0)) throw ArgumentError("blo_modulus: need 0 < r <= 1");
    auto prof = oscillation_profile(scan_oscillation(f, scan, false), {r});
    return prof.eta[0];
}

LogCoefficient blo_log_coefficient(const std::vector<OscillationSample>& samples) {
    LogCoefficient best;
    best.intervals = samples.size();
    for (const auto& s : samples) {
        double v = s.blo() * log_weight(s.log_length());
        if (v > best.value) {
            best.value = v;
            best.witness = s.q;
        }
    }
    return best;
}

LogCoefficient blo_log_coefficient(const RealFunction& f, const ScanConfig& scan) {
    return blo_log_coefficient(scan_oscillation(f, scan, false));
}

OscillationProfile oscillation_profile(const std::vector<OscillationSample>& samples, const std::vector<double>& radii) {
    OscillationProfile p;
    for (double r : radii) {
        if (!(r > 0.0 && r <= 1.0)) throw ArgumentError("oscillation_profile: radii must be in (0, 1]");
        double lr = std::log(r) + 1e-12;
        double g = 0.0, e = 0.0;
        for (const auto& s : samples) {
            if (s.log_length() > lr) continue;
            if (!std::isnan(s.mean_oscillation)) g = std::max(g, s.mean_oscillation);
            e = std::max(e, s.blo());
        }
        double w = log_weight(std::log(r));
        p.r.push_back(r);
        p.gamma.push_back(g);
        p.eta.push_back(e);
        p.gamma_log.push_back(g * w);
        p.eta_log.push_back(e * w);
    }
    return p;
}

OscillationProfile oscillation_profile(const RealFunction& f, const std::vector<double>& radii,
                                       const ScanConfig& scan) {
    return oscillation_profile(scan_oscillation(f, scan, true), radii);
}

MeanBound verify_mean_bound(double a, double b, double tol) {
    if (!(a >= 0.0 && a < b && b <= 1.0 / std::numbers::e))
        throw ArgumentError("verify_mean_bound: need 0 <= a < b <= 1/e");
    // ln ln(1/x) - ln ln(1/b) = ln(ln x / ln b), written to keep x near b accurate.
    const double lb = std::log(b);
    FunctionTraits t;
    if (a == 0.0) t.singularities = {Locus::at(0.0)};
    t.monotone_pieces = true;
    RealFunction h("loglog-excess", [b, lb](const Locus& x) {
        double v = x.approx();
        if (v <= 0.0) return std::numeric_limits<double>::infinity();
        return std::log1p(std::log(v / b) / lb);
    }, std::move(t));
    MeanBound out;
    out.lhs = average(h, Interval(a, b), tol);
    out.rhs = 4.0 / log_weight(std::log(b - a));
    out.pass = out.lhs <= out.rhs + 1e-9;
    return out;
}

} // namespace vexnorm
