#pragma once

#include <cmath>
#include <cstdint>

namespace vexnorm {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: the k-th draw depends only on (seed, stream, k),
/// so tasks can be farmed out to any number of threads without changing
/// what each task sees.
class Rng {
public:
    constexpr Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

    constexpr std::uint64_t next() { return mix64(key_ + mix64(counter_++)); }

    /// Uniform on [0,1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        auto k = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }
    /// Derived independent stream.
    Rng split(std::uint64_t stream) const { return Rng(key_, stream); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace vexnorm
