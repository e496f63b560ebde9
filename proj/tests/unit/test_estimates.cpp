#include <doctest.h>

#include <cmath>

#include "vexnorm/errors.hpp"
#include "vexnorm/estimates.hpp"
#include "vexnorm/zoo.hpp"

using namespace vexnorm;

TEST_CASE("envelope of a constant and of a cell indicator") {
    auto p = counterexample_exponent(0.3, 0.4);
    auto part = partition_dyadic(2);
    auto s = partition_envelope(constant_function(2.0), part, p);
    for (double x : {0.1, 0.3, 0.6, 0.9}) CHECK(s(x) == doctest::Approx(2.0).epsilon(1e-9));
    auto chi = partition_envelope(indicator(part[1]), part, p);
    CHECK(chi(0.3) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(chi(0.1) == 0.0);
    CHECK(chi(0.8) == 0.0);
}

TEST_CASE("Lebesgue identity for constant exponents") {
    for (double p0 : {1.0, 2.0, 3.5}) {
        auto e = constant_exponent(p0);
        for (int depth : {1, 4}) {
            auto part = partition_dyadic(depth);
            for (const auto& f : {identity_function(), power_function(0.2), loglog_function()}) {
                auto r = envelope_ratios(f, part, e);
                CHECK(r.gprime == doctest::Approx(1.0).epsilon(1e-8));
                CHECK(r.gsecond == doctest::Approx(1.0).epsilon(1e-8));
            }
        }
    }
    auto cp = counterexample_exponent(0.3, 0.4);
    CHECK(gprime_ratio(constant_function(1.0), partition_random(7, 0.01, 3), cp) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(gsecond_ratio(constant_function(1.0), partition_dyadic(3), cp) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("gsecond of a zero function is a domain error") {
    CHECK_THROWS_AS(gsecond_ratio(constant_function(0.0), partition_dyadic(1), constant_exponent(2.0)), DomainError);
}

TEST_CASE("property G ratio") {
    Partition whole({Interval(0.0, 1.0)});
    auto p = counterexample_exponent(0.3, 0.4);
    CHECK(property_g_ratio(identity_function(), power_function(0.3), whole, p) == doctest::Approx(1.0).epsilon(1e-9));
    double r = property_g_ratio(identity_function(), constant_function(1.0), partition_dyadic(3), constant_exponent(2.0));
    CHECK(r <= 1.0 + 1e-8);
}

TEST_CASE("condition A") {
    ScanConfig scan{6, 6, 0.25, 2, true, 1e-10};
    auto c = condition_a_coefficient(constant_exponent(2.0), scan);
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-8));
    auto two = condition_a_coefficient(two_step_exponent(1.5, 3.0), scan);
    CHECK(std::isfinite(two.value));
    CHECK(two.value >= 1.0);
    auto ce = condition_a_coefficient(shifted(counterexample_exponent(0.3, 0.4), 1.0), scan);
    CHECK(std::isfinite(ce.value));
    CHECK_THROWS_AS(condition_a_coefficient(constant_exponent(1.0), scan), DomainError);
}

TEST_CASE("averaging operator") {
    auto t = averaging_operator(identity_function(), partition_dyadic(1));
    CHECK(t(0.2) == doctest::Approx(0.25));
    CHECK(t(0.7) == doctest::Approx(0.75));
    auto c = averaging_operator(constant_function(-3.0), partition_dyadic(2));
    CHECK(c(0.6) == doctest::Approx(3.0));
    auto b = averaging_norm_bound(constant_exponent(2.0), {partition_dyadic(3), partition_random(5, 0.05, 2)},
                                  {identity_function(), power_function(0.3)});
    CHECK(b.value <= 1.0 + 1e-8);
    auto one = averaging_norm_bound(counterexample_exponent(0.3, 0.4), {partition_dyadic(3)}, {constant_function(1.0)});
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("maximal function") {
    auto m1 = maximal_function(constant_function(1.0), 9);
    for (double v : m1.value) CHECK(v == doctest::Approx(1.0));
    auto m = maximal_function(indicator(Interval(0.0, 0.5)), 5);
    CHECK(m.x[3] == 0.75);
    CHECK(m.value[3] == doctest::Approx(2.0 / 3));
}

TEST_CASE("averaging lower bound lemma") {
    auto c = exponent_average_check(constant_exponent(2.5), Interval(0.1, 0.4), 3.0);
    CHECK(c.pass);
    CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-12));
    auto one = exponent_average_check(counterexample_exponent(0.3, 0.4), Interval(0.0, 0.5), 1.0);
    CHECK(one.pass);
    CHECK(one.lhs == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("characteristic norm bounds") {
    std::vector<Interval> qs{Interval(0.0, 0.5), Interval(0.25, 0.3), Interval(0.9, 1.0)};
    auto c = char_norm_bounds_check(constant_exponent(2.0), qs);
    CHECK(c.c3 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.c4 == doctest::Approx(1.0).epsilon(1e-9));
    auto l = char_norm_bounds_check(loglog_clamped_exponent(0.3, 0.4), qs);
    CHECK(l.c3 <= l.c4);
    CHECK(l.c3 > 0.0);
}

TEST_CASE("adversarial search") {
    auto r = adversarial_search(constant_exponent(2.0), Objective::gprime, 30, 5);
    CHECK(r.best_value == doctest::Approx(1.0).epsilon(1e-8));
    auto again = adversarial_search(constant_exponent(2.0), Objective::gprime, 30, 5);
    CHECK(again.best_value == r.best_value);
    CHECK(again.partition_description == r.partition_description);
    CHECK_THROWS_AS(adversarial_search(constant_exponent(2.0), Objective::gprime, 0, 5), ArgumentError);
    // Plateau-aligned proposals find growth k^{0.1} against the p' dual at least.
    auto g = adversarial_search(counterexample_exponent(0.3, 0.4), Objective::property_g, 60, 42);
    CHECK(g.best_value > 1.05);
    CHECK(parse_objective("property-g") == Objective::property_g);
    CHECK_THROWS_AS(parse_objective("nope"), ArgumentError);
}
