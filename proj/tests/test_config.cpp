#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>

#include "latdisc/config.hpp"
#include "latdisc/csv.hpp"

using namespace latdisc;

TEST_CASE("defaults parse from empty text") {
    const auto cfg = parse_config_text("");
    CHECK(cfg.body_kind == "sphere");
    CHECK(cfg.eps0 == 0.3);
    CHECK(cfg.L == 3.0);
    CHECK(cfg.c0 == 0.5);
    CHECK(cfg.borel_nodes == 65537);
    CHECK(cfg.workers == 0);
    CHECK(cfg.out.empty());
}

TEST_CASE("a full config round-trips through the parser") {
    const std::string text = R"(
# experiment setup
t = 42.5
t_min = 10
t_max = 30
t_step = 0.5
table_limit = 5000
eps0 = 0.25
coeff = "curvature"
beta = 1.5
c0 = 0.75
L = 4
T = 500
workers = 2
seed = 99
out = "run.csv"

[body]
kind = "spheroid"   # oblate test body
a = 2.0
b = 1.0
coeffs = [1.0, 0.05, -0.01]
)";
    const auto cfg = parse_config_text(text);
    CHECK(cfg.body_kind == "spheroid");
    CHECK(cfg.body_a == 2.0);
    CHECK(cfg.body_coeffs.size() == 3);
    CHECK(cfg.body_coeffs[2] == -0.01);
    CHECK(cfg.t == 42.5);
    CHECK(cfg.t_step == 0.5);
    CHECK(cfg.table_limit == 5000);
    CHECK(cfg.eps0 == 0.25);
    CHECK(cfg.coeff == "curvature");
    CHECK(cfg.beta == 1.5);
    CHECK(cfg.L == 4.0);
    CHECK(cfg.workers == 2);
    CHECK(cfg.seed == 99);
    CHECK(cfg.out == "run.csv");
}

TEST_CASE("unknown keys are rejected with the key name") {
    CHECK_THROWS_WITH_AS(parse_config_text("t_stp = 1.0\n"),
                         "config: unknown key 't_stp'", std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("[body]\nradius = 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("[grid]\n"), std::invalid_argument);
}

TEST_CASE("malformed values are rejected") {
    CHECK_THROWS_AS(parse_config_text("t = fast\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("t\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("coeff = unit\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("workers = 1.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("[body]\ncoeffs = [1.0,]\n"),
                    std::invalid_argument);
}

TEST_CASE("semantic validation catches bad ranges") {
    CHECK_THROWS_AS(parse_config_text("eps0 = 0.9\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("L = 1.0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("borel_nodes = 100\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("[body]\nkind = \"cube\"\n"),
                    std::invalid_argument);
}

TEST_CASE("canonical form is stable and the hash tracks content") {
    const auto a = parse_config_text("");
    const auto b = parse_config_text("t = 100.0\n");  // the default value
    CHECK(canonical_config(a) == canonical_config(b));
    CHECK(config_hash(a) == config_hash(b));

    const auto c = parse_config_text("t = 101.0\n");
    CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("csv header carries version, hash, config echo, and schema") {
    const auto cfg = parse_config_text("");
    std::ostringstream os;
    csv_header(os, cfg, "t,count", {"note = smoke"});
    const std::string out = os.str();
    CHECK(out.find("# latdisc 0.1.0\n") != std::string::npos);
    CHECK(out.find("# config_hash=") != std::string::npos);
    CHECK(out.find("# config: body.kind = \"sphere\"") != std::string::npos);
    CHECK(out.find("# note = smoke\n") != std::string::npos);
    CHECK(out.find("# columns: t,count\n") != std::string::npos);
    // schema line then data header last
    CHECK(out.rfind("t,count\n") == out.size() - 8);
}

TEST_CASE("g17 cells round-trip doubles") {
    for (double v : {1.0, 0.1, 3.141592653589793, 1e-300, -2.5e17}) {
        CHECK(std::stod(g17(v)) == v);
    }
    CHECK(g17(7.0) == "7");
}

TEST_CASE("profile factory follows the body section") {
    auto cfg = parse_config_text("[body]\nkind = \"spheroid\"\na = 3\nb = 2\n");
    const auto p = profile_from(cfg);
    CHECK(p.rho(0.0) == doctest::Approx(2.0));          // polar radius
    CHECK(p.rho(1.5707963267948966) == doctest::Approx(3.0));  // equatorial
}
