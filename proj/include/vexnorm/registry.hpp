#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vexnorm/function.hpp"

namespace vexnorm {

struct RegistryDefaults {
    double a = 0.3;
    double b = 0.4;
    int n_max = 6;
    std::uint64_t seed = 42;
};

/// Named exponents:
///   const:P                      p = P
///   two-step[:LO,HI[,AT]]        LO on [0, AT), HI after (2, 3, 0.5)
///   linear:ALPHA,BETA            ALPHA + BETA x
///   loglog-clamped[:A,B]         1/p = clamp(ln ln(1/x), A, B)
///   sawtooth[:A,B]               1/p = A + (B - A) g
///   counterexample[:A,B]         1/p = clamp(g, A, B)
///   shifted:C:NAME               p + C
///   conjugate-of:NAME            p'
/// A and B default to the --a/--b values.
Exponent parse_exponent(const std::string& spec, const RegistryDefaults& d = {});

/// Named functions:
///   one, x, loglog, g, const:C, power:ALPHA, exp:BETA,
///   indicator:LO,HI, interior-power:S,ALPHA, corpus:FAMILY[:SEED]
/// corpus members are sized for the exponent's p_plus.
RealFunction parse_function(const std::string& spec, double q_plus, const RegistryDefaults& d = {});

/// (A, B) of a counterexample spec; nullopt for any other exponent.
std::optional<std::pair<double, double>> counterexample_levels(const std::string& spec, const RegistryDefaults& d = {});

std::vector<std::string> exponent_names();
std::vector<std::string> function_names();

} // namespace vexnorm
