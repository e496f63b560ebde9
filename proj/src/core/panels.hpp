#pragma once

// Panel bookkeeping shared by the plain integrator and the modular solver.

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "vexnorm/function.hpp"

namespace vexnorm::detail {

inline constexpr int kNodes = 15;
/// Narrowest panel split toward a singular end.
inline constexpr double kMinWidth = std::numeric_limits<double>::min();

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

/// [a, b] in offsets relative to base.
struct Panel {
    double base = 0.0;
    double a = 0.0;
    double b = 0.0;
    bool sing_a = false;
    bool sing_b = false;

    double width() const { return b - a; }
};

/// Node i: 0 is the centre, 2j+1 / 2j+2 are centre -/+ x_j.
inline std::array<Locus, kNodes> node_loci(const Panel& p) {
    std::array<Locus, kNodes> out;
    double c = 0.5 * (p.a + p.b);
    double h = 0.5 * (p.b - p.a);
    out[0] = {p.base, c};
    for (int j = 0; j < 7; ++j) {
        out[static_cast<std::size_t>(2 * j + 1)] = {p.base, c - h * kXgk[static_cast<std::size_t>(j)]};
        out[static_cast<std::size_t>(2 * j + 2)] = {p.base, c + h * kXgk[static_cast<std::size_t>(j)]};
    }
    return out;
}

struct RuleResult {
    double kronrod = 0.0;
    double error = 0.0;
    /// The error is at the roundoff floor; splitting will not help.
    bool at_floor = false;
};

inline RuleResult apply_rule(const Panel& p, const std::array<double, kNodes>& v) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    double h = 0.5 * (p.b - p.a);
    double fc = v[0];
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        double f1 = v[static_cast<std::size_t>(2 * j + 1)];
        double f2 = v[static_cast<std::size_t>(2 * j + 2)];
        resk += kWgk[static_cast<std::size_t>(j)] * (f1 + f2);
        resabs += kWgk[static_cast<std::size_t>(j)] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
    }
    double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[static_cast<std::size_t>(j)] *
                  (std::abs(v[static_cast<std::size_t>(2 * j + 1)] - reskh) +
                   std::abs(v[static_cast<std::size_t>(2 * j + 2)] - reskh));
    RuleResult r;
    r.kronrod = resk * h;
    // Judged before scaling by h so that very narrow panels can still reach the floor.
    bool representable = resabs > uflow / (50.0 * eps);
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    double floor = 50.0 * eps * resabs;
    if (representable && floor >= err) {
        err = floor;
        r.at_floor = true;
    }
    r.error = err;
    return r;
}

/// Split toward a singular end (ratio 1/4) or in half. False when the
/// panel is already at the width floor or cannot be represented finer.
inline bool split_panel(const Panel& p, Panel& left, Panel& right) {
    double w = p.width();
    double cut;
    if (p.sing_a && !p.sing_b) {
        if (w < kMinWidth) return false;
        cut = p.a + 0.25 * w;
    } else if (p.sing_b && !p.sing_a) {
        if (w < kMinWidth) return false;
        cut = p.b - 0.25 * w;
    } else {
        cut = 0.5 * (p.a + p.b);
    }
    if (!(cut > p.a && cut < p.b)) return false;
    left = {p.base, p.a, cut, p.sing_a, false};
    right = {p.base, cut, p.b, false, p.sing_b};
    return true;
}

inline bool matches_any(const Locus& x, const std::vector<Locus>& pts) {
    for (const auto& s : pts)
        if (signed_gap(s, x) == 0.0) return true;
    return false;
}

/// Cut E at the given points and express every piece in a single frame;
/// a piece whose ends live in different frames is halved, each half
/// taking its own end's frame.
inline std::vector<Panel> initial_panels(const Interval& e, const std::vector<Locus>& cuts,
                                         const std::vector<Locus>& singular) {
    std::vector<Locus> pts;
    pts.push_back(e.lo());
    for (const auto& c : cuts)
        if (signed_gap(e.lo(), c) > 0.0 && signed_gap(c, e.hi()) > 0.0) pts.push_back(c);
    pts.push_back(e.hi());
    sort_unique(pts);
    // A singular double becomes its own anchor so that nodes can approach it below ulp.
    for (auto& pt : pts)
        if (pt.absolute() && pt.offset > 0.0 && matches_any(pt, singular)) pt = Locus::anchored(pt.offset, 0.0);
    std::vector<Panel> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Locus& lo = pts[i];
        const Locus& hi = pts[i + 1];
        bool sl = matches_any(lo, singular);
        bool sh = matches_any(hi, singular);
        if (lo.base == hi.base) {
            if (hi.offset > lo.offset) out.push_back({lo.base, lo.offset, hi.offset, sl, sh});
            continue;
        }
        double half = 0.5 * signed_gap(lo, hi);
        // Midpoint, once in each frame.
        double m_lo = lo.offset + half;
        double m_hi = hi.offset - half;
        if (m_lo > lo.offset) out.push_back({lo.base, lo.offset, m_lo, sl, false});
        if (hi.offset > m_hi) out.push_back({hi.base, m_hi, hi.offset, false, sh});
    }
    return out;
}

} // namespace vexnorm::detail
