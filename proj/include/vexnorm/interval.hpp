#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vexnorm/log_scalar.hpp"

namespace vexnorm {

/// A point of [0,1] written as base + offset.
///
/// base == 0 means the offset is the absolute coordinate. A nonzero base is
/// the double image of an exactly known anchor (a ladder point, say); the
/// offset is then measured from the exact anchor, which lets a function that
/// recognises the anchor resolve structure far below ulp(base).
struct Locus {
    double base = 0.0;
    double offset = 0.0;

    static constexpr Locus at(double x) { return {0.0, x}; }
    static constexpr Locus anchored(double base, double offset) { return {base, offset}; }

    double approx() const { return base + offset; }
    bool absolute() const { return base == 0.0; }

    friend bool operator==(const Locus&, const Locus&) = default;
};

/// b - a, with the anchors subtracted first so that nearby loci in
/// different frames still compare sensibly.
double signed_gap(const Locus& a, const Locus& b);

inline bool precedes(const Locus& a, const Locus& b) { return signed_gap(a, b) > 0.0; }

/// Move x by delta (same frame).
inline Locus shifted_by(const Locus& x, double delta) { return {x.base, x.offset + delta}; }

/// Express x relative to the frame of `frame`.
Locus in_frame(const Locus& x, const Locus& frame);

class Interval {
public:
    Interval(double lo, double hi);
    Interval(Locus lo, Locus hi, std::optional<LogScalar> log_length = std::nullopt);

    const Locus& lo() const { return lo_; }
    const Locus& hi() const { return hi_; }
    const std::optional<LogScalar>& log_length() const { return log_length_; }

    /// |Q|; the log form wins when present.
    LogScalar measure() const;
    double length() const { return measure().value(); }

    /// Half-open membership [lo, hi); the right end of [.,1] is included.
    bool contains(const Locus& x) const;
    bool contains(double x) const { return contains(Locus::at(x)); }
    /// Q is a subset of this interval, up to endpoints.
    bool covers(const Interval& q) const;

    Locus midpoint() const;
    std::string describe() const;

private:
    double ulp_scale() const;

    Locus lo_;
    Locus hi_;
    std::optional<LogScalar> log_length_;
};

class Partition {
public:
    explicit Partition(std::vector<Interval> cells);

    const std::vector<Interval>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    const Interval& operator[](std::size_t i) const { return cells_[i]; }

    /// Index of the cell containing x.
    std::size_t locate(const Locus& x) const;

    /// Sorted interior cut points.
    std::vector<Locus> cuts() const;

private:
    std::vector<Interval> cells_;
};

Partition partition_dyadic(int depth);
Partition partition_random(int n_cells, double min_len, std::uint64_t seed);
/// Partition of [0,1] by interior cut points (need not be sorted; duplicates dropped).
Partition partition_from_cuts(std::vector<Locus> cuts);
/// Split a single cell of P at its midpoint (or at `at` when given).
Partition refine_cell(const Partition& p, std::size_t cell, std::optional<Locus> at = std::nullopt);

/// Sort and deduplicate loci in place.
void sort_unique(std::vector<Locus>& pts);

} // namespace vexnorm
