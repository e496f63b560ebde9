#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vexnorm/cli.hpp"
#include "vexnorm/errors.hpp"
#include "vexnorm/registry.hpp"

using namespace vexnorm;

namespace {

struct Run {
    int code;
    nlohmann::json summary;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    auto text = out.str();
    return {code, text.empty() ? nlohmann::json() : nlohmann::json::parse(text)};
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream f(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(f, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

} // namespace

TEST_CASE("registry parses every named exponent") {
    CHECK(parse_exponent("const:2")(0.3) == 2.0);
    CHECK(parse_exponent("two-step").p_plus() == 3.0);
    CHECK(parse_exponent("linear:2,1")(0.5) == doctest::Approx(2.5));
    CHECK(parse_exponent("loglog-clamped").p_plus() == doctest::Approx(1 / 0.3));
    CHECK(parse_exponent("sawtooth:0.2,0.5").p_minus() == doctest::Approx(2.0));
    CHECK(parse_exponent("counterexample:0.3,0.4").p_minus() == doctest::Approx(2.5));
    CHECK(parse_exponent("shifted:1:const:2")(0.1) == 3.0);
    CHECK(parse_exponent("conjugate-of:const:3")(0.1) == doctest::Approx(1.5));
    CHECK_THROWS_AS(parse_exponent("nope"), ArgumentError);
    CHECK_THROWS_AS(parse_exponent("const:x"), ArgumentError);
    CHECK_THROWS_AS(parse_exponent("conjugate-of:const:1"), DomainError);
    auto lv = counterexample_levels("counterexample:0.2,0.5");
    REQUIRE(lv);
    CHECK(lv->first == 0.2);
    CHECK_FALSE(counterexample_levels("const:2"));
}

TEST_CASE("registry parses named functions") {
    CHECK(parse_function("one", 2.0)(0.4) == 1.0);
    CHECK(parse_function("x", 2.0)(0.4) == 0.4);
    CHECK(parse_function("power:0.5", 2.0)(0.25) == doctest::Approx(2.0));
    CHECK(parse_function("indicator:0.2,0.4", 2.0)(0.3) == 1.0);
    CHECK(parse_function("exp:2", 2.0)(0.5) == doctest::Approx(std::exp(1.0)));
    CHECK(parse_function("corpus:0:5", 2.0)(0.5) == parse_function("corpus:0:5", 2.0)(0.5));
    CHECK_THROWS_AS(parse_function("power", 2.0), ArgumentError);
}

TEST_CASE("counterexample subcommand writes the ratio column") {
    auto path = tmp("vexnorm_ce_test.csv");
    auto r = cli({"counterexample", "--a", "0.3", "--b", "0.4", "--k", "8", "--out", path});
    CHECK(r.code == kExitOk);
    CHECK(r.summary["schema_version"] == kSchemaVersion);
    auto rows = read_csv(path);
    REQUIRE(rows.size() == 9);
    auto& h = rows[0];
    auto col = std::find(h.begin(), h.end(), "ratio") - h.begin();
    auto lcol = std::find(h.begin(), h.end(), "log_value") - h.begin();
    REQUIRE(col < static_cast<long>(h.size()));
    REQUIRE(lcol < static_cast<long>(h.size()));
    for (int k = 1; k <= 8; ++k) {
        double v = std::stod(rows[k][col]);
        CHECK(std::abs(v / std::pow(k, 0.3) - 1.0) <= 1e-12);
        CHECK(std::stod(rows[k][lcol]) == doctest::Approx(0.3 * std::log(k)).epsilon(1e-12));
    }
    std::filesystem::remove(path);
}

TEST_CASE("constant-exponent estimates are exact") {
    auto r = cli({"estimates", "--exponent", "const:2", "--suite", "dyadic"});
    CHECK(r.code == kExitOk);
    CHECK(std::abs(r.summary["results"]["sup_gprime"].get<double>() - 1.0) <= 1e-8);
    CHECK(std::abs(r.summary["results"]["min_gprime"].get<double>() - 1.0) <= 1e-8);
    CHECK(std::abs(r.summary["results"]["sup_gsecond"].get<double>() - 1.0) <= 1e-8);
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"norm", "--exponent", "nope"}).code == kExitUsage);
    CHECK(cli({"condition-a", "--exponent", "const:1"}).code == kExitUsage);
    CHECK(cli({"counterexample", "--k", "0"}).code == kExitUsage);
    CHECK(cli({"search", "--budget", "0"}).code == kExitUsage);
    // x^{-0.6} is not square integrable: the norm bracket cannot close.
    CHECK(cli({"norm", "--function", "power:0.6"}).code == kExitNumeric);
    auto ok = cli({"norm", "--exponent", "const:2", "--function", "indicator:0,0.25"});
    CHECK(ok.code == kExitOk);
    CHECK(ok.summary["results"]["norm"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("verify subset reports criteria") {
    auto r = cli({"verify", "--only", "1,8"});
    CHECK(r.code == kExitOk);
    CHECK(r.summary["results"]["criteria"].size() == 2);
}

TEST_CASE("CSV is identical across thread caps") {
    auto a = tmp("vexnorm_t1.csv"), b = tmp("vexnorm_t3.csv");
    ::setenv("VEXNORM_THREADS", "1", 1);
    cli({"estimates", "--exponent", "counterexample", "--suite", "random", "--out", a});
    ::setenv("VEXNORM_THREADS", "3", 1);
    cli({"estimates", "--exponent", "counterexample", "--suite", "random", "--out", b});
    ::unsetenv("VEXNORM_THREADS");
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(!sa.str().empty());
    CHECK(sa.str() == sb.str());
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}
