#pragma once

#include <cstddef>

#include "vexnorm/function.hpp"

namespace vexnorm {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_panels = 1'000'000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t panels = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over E.
///
/// E is cut at every declared breakpoint and singularity of f first. Panels
/// touching a declared singularity are split geometrically (ratio 1/4)
/// toward it, down to the smallest normal width; all others are bisected.
QuadratureResult integrate_detailed(const RealFunction& f, const Interval& e, const QuadratureOptions& opts = {});

double integrate(const RealFunction& f, const Interval& e, double abs_tol = 1e-10, double rel_tol = 1e-10);

/// f_Q, with the integral tolerance scaled by |Q|.
double average(const RealFunction& f, const Interval& q, double tol = 1e-10);

} // namespace vexnorm
