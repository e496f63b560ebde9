#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vexnorm/interval.hpp"

namespace vexnorm {

/// Declared structure an evaluator can not express by itself.
struct FunctionTraits {
    /// Discontinuities, kinks and branch points, sorted.
    std::vector<Locus> breakpoints;
    /// Points where the function may be unbounded (quadrature grades toward them).
    std::vector<Locus> singularities;
    std::optional<double> essential_bound;
    /// The function is monotone between consecutive breakpoints
    /// (singularities count as breakpoints for this purpose).
    bool monotone_pieces = false;
};

class RealFunction {
public:
    using Evaluator = std::function<double(const Locus&)>;

    RealFunction(std::string name, Evaluator eval, FunctionTraits traits = {});

    double operator()(const Locus& x) const { return impl_->eval(x); }
    double operator()(double x) const { return impl_->eval(Locus::at(x)); }

    const std::string& name() const { return impl_->name; }
    const FunctionTraits& traits() const { return impl_->traits; }
    const Evaluator& evaluator() const { return impl_->eval; }

    /// Breakpoints and singularities merged and sorted.
    std::vector<Locus> structure_points() const;

private:
    struct Impl {
        std::string name;
        Evaluator eval;
        FunctionTraits traits;
    };
    std::shared_ptr<const Impl> impl_;
};

class Exponent {
public:
    Exponent(std::string name, RealFunction p, double p_minus, double p_plus);

    double operator()(const Locus& x) const { return p_(x); }
    double operator()(double x) const { return p_(x); }

    double p_minus() const { return p_minus_; }
    double p_plus() const { return p_plus_; }
    bool is_constant() const { return p_minus_ == p_plus_; }
    const std::string& name() const { return name_; }
    const RealFunction& function() const { return p_; }
    const std::vector<Locus>& breakpoints() const { return p_.traits().breakpoints; }

    /// x -> 1/p(x), same declared structure.
    RealFunction reciprocal() const;

private:
    std::string name_;
    RealFunction p_;
    double p_minus_;
    double p_plus_;
};

RealFunction product(const RealFunction& f, const RealFunction& g);
RealFunction scaled(const RealFunction& f, double c);
RealFunction sum(const RealFunction& f, const RealFunction& g);
RealFunction absolute(const RealFunction& f);
/// Declared structure of f and g merged; monotonicity is not inherited.
FunctionTraits merged_traits(const RealFunction& f, const RealFunction& g);

/// Cells of Q cut at the declared structure points of the given functions.
std::vector<Interval> structure_pieces(const Interval& q, const std::vector<Locus>& points);

/// Essential infimum and supremum of f on Q from declared structure:
/// exact on monotone pieces, graded sampling otherwise.
std::pair<double, double> essential_range(const RealFunction& f, const Interval& q);

std::pair<double, double> p_bounds(const Exponent& p, const Interval& q);

/// 1/p̄_Q = average of 1/p over Q.
double harmonic_mean_exponent(const Exponent& p, const Interval& q, double tol = 1e-10);

/// p'(x) = p(x)/(p(x)-1).
Exponent conjugate(const Exponent& p);

} // namespace vexnorm
