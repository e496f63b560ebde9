#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "vexnorm/errors.hpp"
#include "vexnorm/zoo.hpp"

using namespace vexnorm;

TEST_CASE("ladder points against the oracle") {
    BreakpointLadder ladder(kMaxRepresentableLevel);
    const auto& d = oracle()["ladder"]["d"];
    for (int n = 0; n <= kMaxRepresentableLevel; ++n) {
        CAPTURE(n);
        CHECK(ladder.d(n).value() == doctest::Approx(ov(d[n])).epsilon(1e-13));
    }
    auto rep = ladder.verify_identities();
    CHECK(rep.even_residual <= 1e-12);
    CHECK(rep.odd_residual <= 1e-12);
    CHECK(rep.strictly_decreasing);
}

TEST_CASE("loglog function") {
    auto f = loglog_function();
    CHECK(f(std::exp(-1.0)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(f(std::exp(-std::exp(1.0))) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f(0.5) == 0.0);
}

TEST_CASE("sawtooth values against the oracle") {
    auto g = sawtooth_g();
    const auto& s = oracle()["sawtooth"];
    CHECK(g(0.5) == doctest::Approx(ov(s["g_0.5"])).epsilon(1e-13));
    CHECK(g(0.05) == doctest::Approx(ov(s["g_0.05"])).epsilon(1e-13));
    CHECK(g(0.01) == doctest::Approx(ov(s["g_0.01"])).epsilon(1e-13));
    BreakpointLadder ladder(kMaxRepresentableLevel);
    for (int m = 0; m <= 2 * kMaxRepresentableLevel; ++m) {
        CAPTURE(m);
        CHECK(g(Locus::anchored(ladder.anchor(m), 0.0)) == doctest::Approx(m % 2 ? 1.0 : 0.0).epsilon(1e-12));
    }
    // A shallow ladder does not reach x near zero.
    CHECK_THROWS_AS(sawtooth_g(2)(1e-30), ResolutionError);
}

TEST_CASE("level sets against the oracle") {
    const auto& want = oracle()["level_sets_0.3_0.4"];
    for (const auto& row : want) {
        int n = row["n"].get<int>();
        CAPTURE(n);
        CHECK(level_a_length(n, 0.3).value() == doctest::Approx(ov(row["a_len"])).epsilon(1e-12));
        CHECK(level_b_length(n, 0.4).value() == doctest::Approx(ov(row["b_len"])).epsilon(1e-12));
    }
    auto ls = level_sets(0.3, 0.4);
    REQUIRE(ls.b_cells.size() == static_cast<std::size_t>(kMaxRepresentableLevel + 1));
    // The ln 2 in ln|Delta_n^b| = ln 2 - e^{n+b} + ... keeps n = 1 about 13% off e.
    auto shrink = [](int n) { return level_b_length(n + 1, 0.4).log() / level_b_length(n, 0.4).log(); };
    CHECK(shrink(1) == doctest::Approx(std::log(ov(want[1]["b_len"])) / std::log(ov(want[0]["b_len"]))).epsilon(1e-12));
    CHECK(shrink(1) / std::exp(1.0) > 1.1);
    for (int n = 2; n + 1 <= kMaxRepresentableLevel; ++n) {
        CAPTURE(n);
        CHECK(std::abs(shrink(n) / std::exp(1.0) - 1.0) <= 0.05);
    }
    CHECK_THROWS_AS(level_sets(0.4, 0.3), ArgumentError);
}

TEST_CASE("counterexample exponent branches") {
    double a = 0.3, b = 0.4;
    auto p = counterexample_exponent(a, b);
    auto ls = level_sets(a, b);
    CHECK(p(ls.a_cells[1].midpoint()) == doctest::Approx(1 / a));
    CHECK(p(ls.b_cells[1].midpoint()) == doctest::Approx(1 / b));
    // g = (a+b)/2 lies between the level sets on the rising flank of the first peak.
    auto g = sawtooth_g();
    BreakpointLadder ladder(kMaxRepresentableLevel);
    double lo = ladder.anchor(2), hi = ladder.anchor(1);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < 0.35 ? lo : hi) = mid;
    }
    CHECK(p(lo) == doctest::Approx(2 / (a + b)).epsilon(1e-9));
    CHECK(p.p_minus() == doctest::Approx(1 / b));
    CHECK(p.p_plus() == doctest::Approx(1 / a));
}

TEST_CASE("log-Holder defect") {
    CHECK(log_holder_defect(constant_exponent(2.0), 200, 1) == 0.0);
    double d = log_holder_defect(linear_exponent(2.0, 1.0), 2000, 1);
    CHECK(d <= std::exp(-1.0) + 1e-9);
    CHECK(d >= std::exp(-1.0) - 1e-3);
    CHECK(log_holder_defect(counterexample_exponent(0.3, 0.4), 500, 1) > 10.0);
}
