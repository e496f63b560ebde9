#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "vexnorm/counterexample.hpp"
#include "vexnorm/errors.hpp"
#include "vexnorm/norm.hpp"
#include "vexnorm/quadrature.hpp"
#include "vexnorm/zoo.hpp"

using namespace vexnorm;

TEST_CASE("exponent bounds and harmonic means") {
    auto two = constant_exponent(2.0);
    auto [lo, hi] = p_bounds(two, kUnit);
    CHECK(lo == 2.0);
    CHECK(hi == 2.0);
    auto step = two_step_exponent(1.0, 3.0);
    auto [slo, shi] = p_bounds(step, kUnit);
    CHECK(slo == 1.0);
    CHECK(shi == 3.0);
    CHECK(harmonic_mean_exponent(two, Interval(0.2, 0.7)) == doctest::Approx(2.0));
    CHECK(harmonic_mean_exponent(step, kUnit) == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(harmonic_mean_exponent(linear_exponent(2.0, 1.0), kUnit) ==
          doctest::Approx(1.0 / std::log(1.5)).epsilon(1e-10));
}

TEST_CASE("counterexample exponent spans its levels on the first cells") {
    auto p = counterexample_exponent(0.3, 0.4);
    BreakpointLadder ladder(kMaxRepresentableLevel);
    auto [lo, hi] = p_bounds(p, Interval(ladder.anchor(2), ladder.anchor(0)));
    CHECK(lo == doctest::Approx(1 / 0.4).epsilon(1e-6));
    CHECK(hi == doctest::Approx(1 / 0.3).epsilon(1e-6));
}

TEST_CASE("conjugates") {
    CHECK(conjugate(constant_exponent(2.0))(0.3) == doctest::Approx(2.0));
    CHECK(conjugate(constant_exponent(3.0))(0.3) == doctest::Approx(1.5));
    CHECK_THROWS_AS(conjugate(constant_exponent(1.0)), DomainError);
    CHECK(shifted(constant_exponent(2.0), 1.0)(0.5) == 3.0);
    CHECK(shifted(constant_exponent(2.0), 0.0)(0.5) == 2.0);
}

TEST_CASE("modular closed forms") {
    CHECK(modular(constant_function(1.0), counterexample_exponent(0.3, 0.4)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(modular(identity_function(), constant_exponent(2.0)) == doctest::Approx(1.0 / 3));
    CHECK(modular(constant_function(2.0), two_step_exponent(1.0, 3.0)) == doctest::Approx(5.0));
}

TEST_CASE("Luxemburg norm closed forms") {
    CHECK(luxemburg_norm(constant_function(1.0), linear_exponent(1.5, 1.0)) == doctest::Approx(1.0).epsilon(1e-9));
    auto two = constant_exponent(2.0);
    CHECK(luxemburg_norm(indicator(Interval(0.0, 0.25)), two) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(luxemburg_norm(power_function(0.25), two) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(char_norm(two, Interval(0.0, 0.25)) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(char_norm(constant_exponent(1.0), Interval(0.0, 0.125)) == doctest::Approx(0.125).epsilon(1e-9));
    // A function outside every modular ball.
    CHECK_THROWS(luxemburg_norm(power_function(0.6), two));
}

TEST_CASE("characteristic norms of the Delta cells match the oracle") {
    const auto& want = oracle()["char_norm_log_delta_0.3_0.4"];
    auto p = counterexample_exponent(0.3, 0.4);
    auto dp = delta_partition(3, 0.3, 0.4);
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        double w = ov(want[n - 1]);
        CHECK(char_norm_detailed(p, dp.delta(n), 1e-12).log_value == doctest::Approx(w).epsilon(1e-9));
        CHECK(analytic_log_char_norm(n, 0.3, 0.4) == doctest::Approx(w).epsilon(1e-9));
    }
}

TEST_CASE("Holder pairing") {
    auto two = constant_exponent(2.0);
    auto one = constant_function(1.0);
    auto eq = associate_pairing(one, one, two);
    CHECK(eq.pairing == doctest::Approx(1.0));
    CHECK(eq.holder_defect == doctest::Approx(1.0));
    auto dis = associate_pairing(indicator(Interval(0.0, 0.5)), indicator(Interval(0.5, 1.0)),
                                 two_step_exponent(1.5, 3.0));
    CHECK(dis.pairing == doctest::Approx(0.0));
    CHECK(dis.holder_defect == doctest::Approx(0.0));
    auto pw = associate_pairing(power_function(0.25), one, two);
    CHECK(pw.pairing == doctest::Approx(4.0 / 3).epsilon(1e-9));
    CHECK(pw.holder_defect == doctest::Approx(4.0 / 3 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("modular and norm implications") {
    auto two = constant_exponent(2.0);
    auto r = check_modular_norm_relations(constant_function(1.0), two, kUnit, 1.0);
    CHECK(r.pass());
    CHECK(r.modular_bound_slack == doctest::Approx(0.0).epsilon(1e-9));
    auto x = check_modular_norm_relations(identity_function(), two, kUnit, 1.0);
    CHECK(x.pass());
    CHECK(x.modular == doctest::Approx(1.0 / 3));
    CHECK(x.norm == doctest::Approx(1 / std::sqrt(3.0)));
    auto st = step_function(partition_dyadic(2), {0.5, 1.5, 0.2, 1.0});
    CHECK(check_modular_norm_relations(st, two_step_exponent(1.5, 3.0), kUnit, 2.0).pass());
}

TEST_CASE("embedding defect") {
    CHECK(embedding_defect(constant_function(1.0), constant_exponent(2.0), constant_exponent(3.0)) ==
          doctest::Approx(1.0));
    CHECK(embedding_defect(indicator(Interval(0.0, 0.25)), constant_exponent(1.0), constant_exponent(2.0)) ==
          doctest::Approx(0.5).epsilon(1e-9));
    CHECK(embedding_defect(power_function(0.2), constant_exponent(2.0), constant_exponent(2.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(embedding_defect(identity_function(), constant_exponent(3.0), constant_exponent(2.0)),
                    PreconditionError);
}

TEST_CASE("constant-exponent norms are classical Lebesgue norms") {
    for (double p0 : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        auto e = constant_exponent(p0);
        for (const auto& f : {identity_function(), power_function(0.15), loglog_function(),
                              interior_power_function(0.4, 0.1), step_function(partition_dyadic(2), {2, 0.5, 3, 1})}) {
            CAPTURE(p0);
            CAPTURE(f.name());
            auto fp = RealFunction("|f|^p", [f, p0](const Locus& x) { return std::pow(std::abs(f(x)), p0); },
                                   f.traits());
            double classical = std::pow(integrate(fp, kUnit, 1e-14, 1e-13), 1.0 / p0);
            CHECK(luxemburg_norm(f, e, kUnit, 1e-12) == doctest::Approx(classical).epsilon(1e-9));
        }
    }
}

TEST_CASE("zero function has zero norm") {
    auto r = luxemburg_norm_detailed(constant_function(0.0), counterexample_exponent(0.3, 0.4));
    CHECK(r.value == 0.0);
    CHECK(std::isinf(r.log_value));
}
