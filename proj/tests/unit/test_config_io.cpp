#include "slgreen/config_io.hpp"
#include "slgreen/error.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>

using namespace slgreen;
using nlohmann::json;

namespace {

std::string error_of(const json& j) {
    try {
        config_from_json(j);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("built-ins round-trip through JSON") {
    for (const auto& name : builtin_names()) {
        const ProblemConfig cfg = builtin_config(name);
        const json j = config_to_json(cfg);
        const ProblemConfig back = config_from_json(j);
        CHECK(config_to_json(back) == j);
        CHECK(back.a == cfg.a);
        CHECK(back.c == cfg.c);
        CHECK(back.b == cfg.b);
        CHECK(back.transmission.beta == cfg.transmission.beta);
        CHECK(back.mode == cfg.mode);
        CHECK(back.q_plus.structurally_equal(cfg.q_plus));
        CHECK(config_from_string(j.dump(2)).left.c1p == cfg.left.c1p);
        CHECK_FALSE(builtin_notes(name).empty());
    }
    CHECK_THROWS_AS(builtin_config("X"), ConfigError);
}

TEST_CASE("schema errors name the field path") {
    const json good = config_to_json(builtin_config("P"));

    json j = good;
    j.erase("transmission");
    CHECK(error_of(j) == "/transmission: missing required field");

    j = good;
    j["extra"] = 1;
    CHECK(error_of(j) == "/extra: unknown field");

    j = good;
    j["boundary_left"]["alpha12"] = 0;
    CHECK(error_of(j) == "/boundary_left/alpha12: unknown field");

    j = good;
    j["boundary_right"].erase("alpha21p");
    CHECK(error_of(j) == "/boundary_right/alpha21p: missing required field");

    j = good;
    j["transmission"]["beta"][1] = {1, 2, 3};
    CHECK(error_of(j) == "/transmission/beta/1: expected 4 numbers");

    j = good;
    j["domain"]["c"] = "zero";
    CHECK(error_of(j) == "/domain/c: expected a number");

    j = good;
    j["q"]["minus"] = "sin(";
    CHECK(error_of(j).rfind("/q/minus: ", 0) == 0);

    j = good;
    j["mode"] = "loose";
    CHECK(error_of(j).rfind("/mode", 0) == 0);

    j = good;
    j["integrator"]["steps_per_side"] = 1.5;
    CHECK(error_of(j) == "/integrator/steps_per_side: expected an integer");

    CHECK_THROWS_AS(config_from_string("{not json"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("optional fields and numeric q") {
    json j = config_to_json(builtin_config("D"));
    j.erase("mode");
    j.erase("integrator");
    j["q"]["minus"] = 2.5;
    const ProblemConfig cfg = config_from_json(j);
    CHECK(cfg.mode == Mode::Lenient);
    CHECK(cfg.integrator.steps_per_side == 2000);
    CHECK(cfg.q_minus.eval(0.3) == 2.5);
}

TEST_CASE("load from disk") {
    const std::string path = "config_io_roundtrip.json";
    {
        std::ofstream f(path);
        f << config_to_json(builtin_config("E")).dump(2);
    }
    const ProblemConfig cfg = load_config(path);
    CHECK(cfg.mode == Mode::Strict);
    CHECK(cfg.p_plus == 2.0);
    CHECK(cfg.q_plus.eval(0.5) == 1.25);
}
