#include <doctest.h>

#include <string>

#include "wedgewave/config.hpp"

using namespace wedgewave;

namespace {

std::string minimal_cfg(const std::string& packet_extra = "", const std::string& times = "0, 1") {
    return "[wedge]\nn = 3\n"
           "[packet]\nx0 = 5\ny0 = 3\npx0 = 0\npy0 = 0\nbeta = 1\nm = 1\nhbar = 1\n" +
           packet_extra + "[times]\nvalues = " + times +
           "\n[output]\ndir = out\nartifacts = density\n";
}

}  // namespace

TEST_CASE("the shipped fig2 config parses and round-trips") {
    const RunConfig cfg = load_run_config(std::string(WEDGEWAVE_SOURCE_DIR) + "/configs/fig2.cfg");
    CHECK(cfg.wedge_n == 3);
    CHECK(cfg.x0 == 5.0);
    CHECK(cfg.y0 == 3.0);
    CHECK(cfg.px0 == 0.0);
    CHECK(cfg.py0 == 0.0);
    CHECK(cfg.beta == 1.0);
    CHECK(cfg.times == std::vector<double>{0.0, 5.0, 10.0, 15.0});
    CHECK(!cfg.grid.automatic);
    CHECK(cfg.grid.spec.nx == 241);
    CHECK(cfg.grid.spec.ny == 201);
    CHECK(cfg.artifacts == std::vector<Artifact>{Artifact::Density, Artifact::Heatmap});

    const RunConfig again = parse_run_config(serialize_run_config(cfg));
    CHECK(again == cfg);
}

TEST_CASE("fig3 and fig4 configs round-trip") {
    for (const char* name : {"/configs/fig3.cfg", "/configs/fig4.cfg"}) {
        const RunConfig cfg = load_run_config(std::string(WEDGEWAVE_SOURCE_DIR) + name);
        CHECK(parse_run_config(serialize_run_config(cfg)) == cfg);
    }
}

TEST_CASE("range violations name the offending key") {
    const std::string bad =
        "[wedge]\nn = 3\n[packet]\nx0 = 5\ny0 = 3\npx0 = 0\npy0 = 0\nbeta = -1\nm = 1\nhbar = "
        "1\n[times]\nvalues = 0\n[output]\ndir = out\nartifacts = density\n";
    try {
        parse_run_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("beta") != std::string::npos);
    }
}

TEST_CASE("times must be increasing and non-empty") {
    CHECK_THROWS_WITH_AS(parse_run_config(minimal_cfg("", "5, 3")),
                         doctest::Contains("strictly increasing"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(minimal_cfg("", "1, 1")), ConfigError);
}

TEST_CASE("unknown keys are rejected with their line") {
    try {
        parse_run_config(minimal_cfg("betta = 2\n"));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("betta") != std::string::npos);
        CHECK(e.line() == 11);  // the inserted line in the [packet] block
    }
    CHECK_THROWS_WITH_AS(parse_run_config(minimal_cfg() + "[plotting]\ncolor = red\n"),
                         doctest::Contains("unknown section"), ConfigError);
}

TEST_CASE("missing and duplicate keys") {
    const std::string missing =
        "[wedge]\nn = 3\n[packet]\nx0 = 5\ny0 = 3\npx0 = 0\npy0 = 0\nbeta = 1\nm = "
        "1\n[times]\nvalues = 0\n[output]\ndir = out\nartifacts = density\n";
    CHECK_THROWS_WITH_AS(parse_run_config(missing), doctest::Contains("hbar"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_run_config(minimal_cfg("beta = 2\n")),
                         doctest::Contains("duplicate"), ConfigError);
}

TEST_CASE("grid key consistency") {
    CHECK_THROWS_WITH_AS(parse_run_config(minimal_cfg() + "[grid]\nmode = auto\nnx = 10\n"),
                         doctest::Contains("mode = explicit"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_run_config(minimal_cfg() + "[grid]\nmode = explicit\nx_min = 0\n"),
                         doctest::Contains("missing required key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_run_config(minimal_cfg() + "[grid]\nk_sigma = 2\n"),
                         doctest::Contains("k_sigma"), ConfigError);
    const RunConfig cfg = parse_run_config(
        minimal_cfg() +
        "[grid]\nmode = explicit\nx_min = 0\nx_max = 2\ny_min = 0\ny_max = 1\nnx = 21\nny = "
        "11\n");
    CHECK(!cfg.grid.automatic);
    CHECK(cfg.grid.spec.dx() == doctest::Approx(0.1));
}

TEST_CASE("artifact list parsing") {
    const RunConfig cfg = parse_run_config(
        "[wedge]\nn = 1\n[packet]\nx0 = 3\ny0 = 1\npx0 = 0\npy0 = 0\nbeta = 1\nm = 1\nhbar = "
        "1\n[times]\nvalues = 0\n[output]\ndir = o\nartifacts = density, heatmap, series, "
        "momentum1d, images\n");
    CHECK(cfg.artifacts.size() == 5);
    CHECK_THROWS_WITH_AS(parse_run_config("x = 1\n" + minimal_cfg()),
                         doctest::Contains("outside any"), ConfigError);
}

TEST_CASE("syntax errors carry line numbers") {
    try {
        parse_run_config("[wedge]\nn = 3\nnonsense line\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
    }
}
