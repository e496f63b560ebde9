#include "vexnorm/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vexnorm/errors.hpp"
#include "vexnorm/rng.hpp"

namespace vexnorm {

double signed_gap(const Locus& a, const Locus& b) {
    if (a.base == b.base) return b.offset - a.offset;
    // An absolute point is read as the anchor it names.
    Locus x = a.absolute() ? Locus{a.offset, 0.0} : a;
    Locus y = b.absolute() ? Locus{b.offset, 0.0} : b;
    if (x.base == y.base) return y.offset - x.offset;
    return (y.base - x.base) + (y.offset - x.offset);
}

Locus in_frame(const Locus& x, const Locus& frame) {
    if (x.base == frame.base) return x;
    return {frame.base, (x.base - frame.base) + x.offset};
}

Interval::Interval(double lo, double hi) : Interval(Locus::at(lo), Locus::at(hi)) {}

Interval::Interval(Locus lo, Locus hi, std::optional<LogScalar> log_length)
    : lo_(lo), hi_(hi), log_length_(log_length) {
    double a = lo_.approx();
    double b = hi_.approx();
    if (!(a >= 0.0) || !(b <= 1.0) || std::isnan(a) || std::isnan(b))
        throw ArgumentError("Interval: endpoints must lie in [0,1], got " + describe());
    double gap = signed_gap(lo_, hi_);
    if (!(gap > 0.0) && !(log_length_ && !log_length_->is_zero() && gap == 0.0))
        throw ArgumentError("Interval: need lo < hi, got " + describe());
    if (log_length_) {
        if (log_length_->is_zero()) throw ArgumentError("Interval: zero log_length");
        if (gap > 1e-200) {
            double claimed = log_length_->value();
            if (std::abs(claimed - gap) > 1e-12 * gap + 4.0 * ulp_scale())
                throw ArgumentError("Interval: log_length disagrees with endpoints for " + describe());
        }
    }
}

double Interval::ulp_scale() const {
    double m = std::max(std::abs(lo_.base), std::abs(hi_.base));
    return m * std::numeric_limits<double>::epsilon();
}

LogScalar Interval::measure() const {
    if (log_length_) return *log_length_;
    return LogScalar::from_value(signed_gap(lo_, hi_));
}

bool Interval::contains(const Locus& x) const {
    if (signed_gap(lo_, x) < 0.0) return false;
    double to_hi = signed_gap(x, hi_);
    if (to_hi > 0.0) return true;
    return to_hi == 0.0 && hi_.approx() == 1.0;
}

bool Interval::covers(const Interval& q) const {
    return signed_gap(lo_, q.lo()) >= 0.0 && signed_gap(q.hi(), hi_) >= 0.0;
}

Locus Interval::midpoint() const {
    if (lo_.base == hi_.base) return {lo_.base, 0.5 * (lo_.offset + hi_.offset)};
    return shifted_by(lo_, 0.5 * signed_gap(lo_, hi_));
}

std::string Interval::describe() const {
    std::ostringstream os;
    os.precision(17);
    auto put = [&](const Locus& x) {
        if (x.absolute()) os << x.offset;
        else os << x.base << (x.offset < 0 ? "" : "+") << x.offset;
    };
    os << '[';
    put(lo_);
    os << ", ";
    put(hi_);
    os << ']';
    return os.str();
}

Partition::Partition(std::vector<Interval> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) throw ArgumentError("Partition: no cells");
    if (cells_.front().lo().approx() != 0.0 || cells_.back().hi().approx() != 1.0)
        throw ArgumentError("Partition: cells must cover [0,1]");
    for (std::size_t i = 1; i < cells_.size(); ++i) {
        if (!(cells_[i - 1].hi() == cells_[i].lo()) && signed_gap(cells_[i - 1].hi(), cells_[i].lo()) != 0.0)
            throw ArgumentError("Partition: cells " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                " are not adjacent");
    }
    std::vector<LogScalar> lengths;
    lengths.reserve(cells_.size());
    for (const auto& c : cells_) lengths.push_back(c.measure());
    double total = sum(lengths).value();
    if (std::abs(total - 1.0) > 1e-12)
        throw ArgumentError("Partition: total length " + std::to_string(total) + " differs from 1");
}

std::size_t Partition::locate(const Locus& x) const {
    auto it = std::upper_bound(cells_.begin(), cells_.end(), x,
                               [](const Locus& v, const Interval& c) { return signed_gap(v, c.lo()) > 0.0; });
    if (it == cells_.begin()) throw ArgumentError("Partition::locate: point outside [0,1]");
    return static_cast<std::size_t>(it - cells_.begin()) - 1;
}

std::vector<Locus> Partition::cuts() const {
    std::vector<Locus> out;
    for (std::size_t i = 1; i < cells_.size(); ++i) out.push_back(cells_[i].lo());
    return out;
}

void sort_unique(std::vector<Locus>& pts) {
    std::stable_sort(pts.begin(), pts.end(), [](const Locus& a, const Locus& b) { return precedes(a, b); });
    std::vector<Locus> out;
    for (const auto& p : pts)
        if (out.empty() || signed_gap(out.back(), p) > 0.0) out.push_back(p);
    pts = std::move(out);
}

Partition partition_dyadic(int depth) {
    if (depth < 0 || depth > 30) throw ArgumentError("partition_dyadic: depth must be in [0,30]");
    std::size_t n = std::size_t{1} << depth;
    std::vector<Interval> cells;
    cells.reserve(n);
    double h = std::ldexp(1.0, -depth);
    for (std::size_t i = 0; i < n; ++i) cells.emplace_back(static_cast<double>(i) * h, static_cast<double>(i + 1) * h);
    return Partition(std::move(cells));
}

Partition partition_random(int n_cells, double min_len, std::uint64_t seed) {
    if (n_cells < 1) throw ArgumentError("partition_random: n_cells must be >= 1");
    if (!(min_len > 0.0)) throw ArgumentError("partition_random: min_len must be positive");
    if (n_cells * min_len > 1.0) throw ArgumentError("partition_random: n_cells * min_len exceeds 1");
    Rng rng(seed, 0x7061727469ULL);
    std::vector<double> w(static_cast<std::size_t>(n_cells));
    double total = 0.0;
    for (auto& wi : w) {
        wi = -std::log1p(-rng.uniform());
        total += wi;
    }
    double free = 1.0 - n_cells * min_len;
    std::vector<Locus> cuts;
    double x = 0.0;
    for (int i = 0; i + 1 < n_cells; ++i) {
        x += min_len + free * w[static_cast<std::size_t>(i)] / total;
        cuts.push_back(Locus::at(x));
    }
    auto p = partition_from_cuts(cuts);
    for (const auto& c : p.cells())
        if (c.length() < min_len * (1.0 - 1e-12))
            throw NumericError("partition_random: rounding produced a short cell");
    return p;
}

Partition partition_from_cuts(std::vector<Locus> cuts) {
    std::erase_if(cuts, [](const Locus& c) { return !(c.approx() > 0.0 && c.approx() < 1.0); });
    sort_unique(cuts);
    std::vector<Interval> cells;
    Locus prev = Locus::at(0.0);
    for (const auto& c : cuts) {
        cells.emplace_back(prev, c);
        prev = c;
    }
    cells.emplace_back(prev, Locus::at(1.0));
    return Partition(std::move(cells));
}

Partition refine_cell(const Partition& p, std::size_t cell, std::optional<Locus> at) {
    if (cell >= p.size()) throw ArgumentError("refine_cell: index out of range");
    const auto& c = p[cell];
    Locus cut = at ? *at : c.midpoint();
    if (!(signed_gap(c.lo(), cut) > 0.0 && signed_gap(cut, c.hi()) > 0.0))
        throw ArgumentError("refine_cell: cut point not interior to the cell");
    std::vector<Interval> cells;
    cells.reserve(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i != cell) {
            cells.push_back(p[i]);
            continue;
        }
        cells.emplace_back(c.lo(), cut);
        cells.emplace_back(cut, c.hi());
    }
    return Partition(std::move(cells));
}

} // namespace vexnorm
