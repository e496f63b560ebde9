#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "vexnorm/function.hpp"

namespace vexnorm {

inline const Interval kUnit{0.0, 1.0};

struct NormResult {
    double value = 0.0;
    /// ln of the norm; -inf for the zero function.
    double log_value = 0.0;
    /// rho(f/value) - 1 at the returned value.
    double residual = 0.0;
    int iterations = 0;
};

/// ln rho(f e^{-mu}) over a fixed domain, evaluated on a mesh that is
/// refined as needed and kept between calls, so a root search in mu pays
/// for function and exponent evaluations only once.
///
/// With f == nullptr the integrand is chi_E.
class LogModular {
public:
    LogModular(const RealFunction* f, const Exponent& p, const Interval& e, double rel_tol,
               std::size_t max_panels = 400'000);
    ~LogModular();
    LogModular(LogModular&&) noexcept;
    LogModular& operator=(LogModular&&) noexcept;

    struct Value {
        /// ln of the integral of exp(p(x) (ln|f(x)| + shift - mu)).
        double log_rho;
        /// d log_rho / d mu.
        double slope;
    };

    Value at(double mu, double shift = 0.0);
    std::size_t panels() const;

private:
    struct State;
    std::unique_ptr<State> s_;
};

/// Root of log_rho(mu) = 0 for a decreasing convex log-modular, bracketed
/// from the modular bounds p_- and p_+ and then polished by safeguarded
/// Newton steps in mu = ln(lambda).
using LogModularFn = std::function<LogModular::Value(double mu)>;
NormResult solve_log_norm(const LogModularFn& phi, double p_minus, double p_plus, double tol);

double modular(const RealFunction& f, const Exponent& p, const Interval& e = kUnit, double tol = 1e-10);

NormResult luxemburg_norm_detailed(const RealFunction& f, const Exponent& p, const Interval& e = kUnit,
                                   double tol = 1e-10);
double luxemburg_norm(const RealFunction& f, const Exponent& p, const Interval& e = kUnit, double tol = 1e-10);

/// ||chi_Q||, solving the integral of lambda^{-p} over Q equal to 1 in log-lambda.
NormResult char_norm_detailed(const Exponent& p, const Interval& q, double tol = 1e-10);
double char_norm(const Exponent& p, const Interval& q, double tol = 1e-10);

struct Pairing {
    double pairing = 0.0;
    double holder_defect = 0.0;
};
/// Integral of |fg| against ||f||_p ||g||_{p'}.
Pairing associate_pairing(const RealFunction& f, const RealFunction& g, const Exponent& p, double tol = 1e-10);

struct ModularNormReport {
    double modular = 0.0;
    double norm = 0.0;
    double p_minus = 0.0;
    double p_plus = 0.0;
    /// rho(f/||f||) = 1.
    bool unit_modular = false;
    double unit_residual = 0.0;
    /// rho(f) <= C implies ||f|| <= max(C^{1/p_-}, C^{1/p_+}).
    bool modular_bound_applies = false;
    bool modular_bound = true;
    double modular_bound_slack = 0.0;
    /// ||f|| <= C implies rho(f) <= max(C^{p_+}, C^{p_-}).
    bool norm_bound_applies = false;
    bool norm_bound = true;
    double norm_bound_slack = 0.0;

    bool pass() const { return unit_modular && modular_bound && norm_bound; }
};
ModularNormReport check_modular_norm_relations(const RealFunction& f, const Exponent& p, const Interval& e, double c,
                                               double tol = 1e-6);

/// ||f||_p / ||f||_q for p <= q.
double embedding_defect(const RealFunction& f, const Exponent& p, const Exponent& q, double tol = 1e-10);

} // namespace vexnorm
