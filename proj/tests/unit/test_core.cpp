#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "oracle.hpp"
#include "vexnorm/errors.hpp"
#include "vexnorm/interval.hpp"
#include "vexnorm/log_scalar.hpp"
#include "vexnorm/quadrature.hpp"
#include "vexnorm/rng.hpp"
#include "vexnorm/zoo.hpp"

using namespace vexnorm;

TEST_CASE("log scalar arithmetic stays in the log domain") {
    auto x = LogScalar::from_log(-1e5), y = LogScalar::from_log(-1e5 + std::log(3.0));
    CHECK((y / x).value() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK((x + x).log() == doctest::Approx(-1e5 + std::log(2.0)).epsilon(1e-15));
    CHECK(y.minus(x).log() == doctest::Approx(-1e5 + std::log(2.0)).epsilon(1e-15));
    CHECK(LogScalar::zero().is_zero());
    CHECK((LogScalar::zero() + x) == x);
    CHECK(x.pow(0.5).log() == doctest::Approx(-5e4));
}

TEST_CASE("dyadic partitions") {
    CHECK(partition_dyadic(0).size() == 1);
    auto p1 = partition_dyadic(1);
    REQUIRE(p1.size() == 2);
    CHECK(p1[0].length() == 0.5);
    auto p3 = partition_dyadic(3);
    REQUIRE(p3.size() == 8);
    for (const auto& q : p3.cells()) CHECK(q.length() == doctest::Approx(0.125));
    CHECK_THROWS_AS(partition_dyadic(-1), ArgumentError);
}

TEST_CASE("random partitions") {
    auto one = partition_random(1, 0.5, 3);
    REQUIRE(one.size() == 1);
    CHECK(one[0].length() == 1.0);
    auto p = partition_random(4, 0.05, 7);
    REQUIRE(p.size() == 4);
    double total = 0.0;
    for (const auto& q : p.cells()) {
        CHECK(q.length() >= 0.05 - 1e-15);
        total += q.length();
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(partition_random(20, 0.06, 1), ArgumentError);
    // Same seed, same cells.
    auto q = partition_random(4, 0.05, 7);
    for (std::size_t i = 0; i < 4; ++i) CHECK(q[i].lo() == p[i].lo());
}

TEST_CASE("loci in different frames compare by anchor") {
    Locus a = Locus::anchored(0.25, -1e-30), b = Locus::at(0.25);
    CHECK(signed_gap(a, b) == doctest::Approx(1e-30));
    CHECK(precedes(a, b));
    Interval q(a, Locus::anchored(0.25, 1e-30));
    CHECK(q.length() == doctest::Approx(2e-30));
}

TEST_CASE("counter-based rng is reproducible per stream") {
    Rng a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 5; ++i) {
        auto x = a.next();
        CHECK(x == b.next());
        CHECK(x != c.next());
    }
}

namespace {

RealFunction fn(std::string name, std::function<double(double)> f, FunctionTraits t = {}) {
    return RealFunction(std::move(name), [f](const Locus& x) { return f(x.approx()); }, std::move(t));
}

FunctionTraits singular_at(double s) {
    FunctionTraits t;
    t.singularities = {Locus::at(s)};
    return t;
}

FunctionTraits break_at(double s) {
    FunctionTraits t;
    t.breakpoints = {Locus::at(s)};
    return t;
}

std::map<std::string, RealFunction> integrand_table() {
    std::map<std::string, RealFunction> m;
    for (int k = 0; k < 10; ++k) m.emplace("pow:" + std::to_string(k), fn("x^k", [k](double x) { return std::pow(x, k); }));
    for (int j = 1; j < 10; ++j) m.emplace("invpow:" + std::to_string(j), power_function(j / 10.0));
    auto s0 = singular_at(0.0);
    m.emplace("log1", fn("log1", [](double x) { return std::log(1 / x); }, s0));
    m.emplace("log2", fn("log2", [](double x) { return std::pow(std::log(1 / x), 2); }, s0));
    m.emplace("sqrtlog", fn("sqrtlog", [](double x) { return std::sqrt(std::log(1 / x)); }, s0));
    m.emplace("invsqrt_log", fn("invsqrt_log", [](double x) { return std::log(1 / x) / std::sqrt(x); }, s0));
    m.emplace("loglog", loglog_function());
    m.emplace("loglog_01_02", loglog_function());
    for (int beta : {-3, -1, 1, 2, 5})
        m.emplace("exp:" + std::to_string(beta), fn("exp", [beta](double x) { return std::exp(beta * x); }));
    for (int k = 1; k <= 5; ++k)
        m.emplace("sin2:" + std::to_string(k), fn("sin2", [k](double x) {
                      double s = std::sin(k * std::numbers::pi * x);
                      return s * s;
                  }));
    m.emplace("runge1", fn("runge1", [](double x) { return 1 / (1 + x * x); }));
    m.emplace("runge25", fn("runge25", [](double x) { return 1 / (1 + 25 * x * x); }));
    m.emplace("sqrt", fn("sqrt", [](double x) { return std::sqrt(x); }, s0));
    m.emplace("sqrt1m", fn("sqrt1m", [](double x) { return std::sqrt(1 - x); }, singular_at(1.0)));
    m.emplace("interior_invsqrt", interior_power_function(0.3, 0.5));
    m.emplace("step2", fn("step2", [](double x) { return x < 0.3 ? 1.0 : 2.0; }, break_at(0.3)));
    m.emplace("abs_half", fn("abs_half", [](double x) { return std::abs(x - 0.5); }, break_at(0.5)));
    m.emplace("max04", fn("max04", [](double x) { return std::max(x, 0.4); }, break_at(0.4)));
    m.emplace("narrow_linear", identity_function());
    m.emplace("tiny_invsqrt", power_function(0.5));
    m.emplace("x_invpow_09_tail", power_function(0.9));
    m.emplace("cos", fn("cos", [](double x) { return std::cos(3 * x); }));
    m.emplace("gauss", fn("gauss", [](double x) { return std::exp(-4 * x * x); }));
    m.emplace("rational", fn("rational", [](double x) { return 1 / (2 + x); }));
    m.emplace("xlogx", fn("xlogx", [](double x) { return x > 0 ? x * std::log(x) : 0.0; }, s0));
    m.emplace("invpow_interior_07", interior_power_function(0.4, 0.7));
    m.emplace("poly_mixed", fn("poly", [](double x) { return x - x * x + x * x * x; }));
    m.emplace("exp_invsqrt", fn("exp_invsqrt", [](double x) { return std::exp(-x) / std::sqrt(x); }, s0));
    m.emplace("heavy_step", fn("heavy", [](double x) { return x < 1e-3 ? 1000.0 : 1e-3; }, break_at(1e-3)));
    return m;
}

} // namespace

TEST_CASE("quadrature matches closed forms within its own error bound") {
    auto table = integrand_table();
    int seen = 0;
    for (const auto& item : oracle()["integrands"]) {
        auto name = item["name"].get<std::string>();
        CAPTURE(name);
        auto it = table.find(name);
        REQUIRE(it != table.end());
        double lo = ov(item["lo"]), hi = ov(item["hi"]), exact = ov(item["value"]);
        auto r = integrate_detailed(it->second, Interval(lo, hi));
        double err = std::abs(r.value - exact);
        CHECK(err <= 1e-8 * std::max(1.0, std::abs(exact)));
        // The decimal endpoints are not doubles; that shift is not the rule's error.
        double shift = 0.0;
        for (double end : {lo, hi})
            if (end != 0.0 && end != 1.0) shift += std::abs(it->second(end)) * std::abs(std::nextafter(end, 2.0) - end);
        CHECK(err <= r.error + shift + 8 * 2.2e-16 * std::abs(exact));
        ++seen;
    }
    CHECK(seen == 54);
}

TEST_CASE("quadrature exact cases") {
    CHECK(integrate(constant_function(1.0), Interval(0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(integrate(identity_function(), Interval(0.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-15));
    double o = ov(oracle()["quadrature"]["loglog_0_1e"]);
    CHECK(integrate(loglog_function(), Interval(0.0, std::exp(-1.0))) == doctest::Approx(o).epsilon(1e-8));
}

TEST_CASE("averages") {
    CHECK(average(identity_function(), Interval(0.0, 1.0)) == doctest::Approx(0.5));
    CHECK(average(constant_function(2.5), Interval(0.2, 0.3)) == doctest::Approx(2.5));
    double o = ov(oracle()["quadrature"]["loglog_avg_0.1_0.2"]);
    CHECK(average(loglog_function(), Interval(0.1, 0.2)) == doctest::Approx(o).epsilon(1e-8));
}

TEST_CASE("quadrature budget exhaustion is a numeric error") {
    QuadratureOptions opts;
    opts.max_panels = 4;
    opts.abs_tol = opts.rel_tol = 1e-15;
    auto wild = fn("wild", [](double x) { return std::sin(1.0 / (x + 1e-3)); });
    CHECK_THROWS_AS(integrate_detailed(wild, Interval(0.0, 1.0), opts), NumericError);
}
