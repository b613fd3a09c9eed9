#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "sqfcs/config.hpp"

using namespace sqfcs;

TEST_CASE("config parsing: keys, comments, whitespace, repeats") {
    std::istringstream in(
        "# reference setup\n"
        "omega0 = 0.5\n"
        "  occ_l=1.0   # left occupation\n"
        "occ_r = 0.1\n"
        "\n"
        "x_l = 0.25\n"
        "x_l = 0.5\n");
    const ParamConfig c = parse_config(in);
    REQUIRE(c.omega0.has_value());
    CHECK(*c.omega0 == 0.5);
    CHECK(*c.occ_l == 1.0);
    CHECK(*c.occ_r == 0.1);
    CHECK(*c.x_l == 0.5);  // last occurrence wins
    CHECK_FALSE(c.x_r.has_value());
    CHECK_FALSE(c.temp_l.has_value());
}

TEST_CASE("config parsing errors") {
    std::istringstream unknown("speed = 3\n");
    CHECK_THROWS_AS(parse_config(unknown), ConfigError);
    std::istringstream badnum("occ_l = fast\n");
    CHECK_THROWS_AS(parse_config(badnum), ConfigError);
    std::istringstream noeq("occ_l 1\n");
    CHECK_THROWS_AS(parse_config(noeq), ConfigError);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/sqfcs.conf"), ConfigError);
}

TEST_CASE("overrides win over file values") {
    std::istringstream in("occ_l = 1\nocc_r = 0.1\nx_l = 0.25\n");
    const ParamConfig file = parse_config(in);
    ParamConfig cli;
    cli.x_l = 2.0;
    cli.gamma_r = 0.5;
    const ParamConfig m = merge(file, cli);
    CHECK(*m.x_l == 2.0);
    CHECK(*m.gamma_r == 0.5);
    CHECK(*m.occ_l == 1.0);
}

TEST_CASE("resolution fills defaults and keeps optionality") {
    ParamConfig c;
    c.occ_l = 1.0;
    c.occ_r = 0.1;
    const ModelParams p = resolve(c);
    CHECK(p.omega0 == 0.5);
    CHECK(p.left.gamma == 1.0);
    CHECK(p.right.gamma == 1.0);
    CHECK(p.left.squeeze == 0.0);
    CHECK(*p.left.occupation == 1.0);
    CHECK_FALSE(p.left.temperature.has_value());

    // both slots present: occupation wins at rate-building time
    ParamConfig both = c;
    both.temp_l = 0.7;
    const RateSet r = make_rates(resolve(both));
    CHECK(r.bose_l == 1.0);

    // a side with neither slot fails when the rates are needed
    ParamConfig missing;
    missing.occ_l = 1.0;
    CHECK_THROWS_AS(make_rates(resolve(missing)), std::invalid_argument);
}
