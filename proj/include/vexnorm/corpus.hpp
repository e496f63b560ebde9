#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vexnorm/function.hpp"

namespace vexnorm {

inline constexpr const char* kCorpusVersion = "v1";
inline constexpr int kCorpusFamilies = 12;

struct CorpusEntry {
    int family = 0;
    std::string family_name;
    std::string description;
    RealFunction f;
};

/// Member of a test-function family, parameterised deterministically by seed.
/// Power-type singularities are kept weak enough that |f|^q is integrable
/// for every q <= q_plus.
CorpusEntry corpus_function(int family, std::uint64_t seed, double q_plus);

/// One member of every family.
std::vector<CorpusEntry> corpus_suite(std::uint64_t seed, double q_plus);

const char* corpus_family_name(int family);

} // namespace vexnorm
