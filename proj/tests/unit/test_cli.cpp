#include "slgreen/cli.hpp"
#include "slgreen/config_io.hpp"

#include <catch_amalgamated.hpp>

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace slgreen;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "slgreen");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const std::string work = "cli_unit";

std::string path(const std::string& name) {
    std::filesystem::create_directories(work);
    return work + "/" + name;
}

}  // namespace

TEST_CASE("validate") {
    Result d = run({"validate", "--config", "builtin:D"});
    CHECK(d.code == 0);
    CHECK(d.out.find("θ₁ = 0 (degenerate left boundary mode)") != std::string::npos);

    Result p = run({"validate", "--config", "builtin:P"});
    CHECK(p.code == 0);
    CHECK(p.out.find("θ₁ = -1 < 0") != std::string::npos);

    json j = config_to_json(builtin_config("P"));
    j.erase("transmission");
    const std::string bad = path("missing_transmission.json");
    std::ofstream(bad) << j.dump();
    Result m = run({"validate", "--config", bad});
    CHECK(m.code == 2);
    CHECK(m.err.find("/transmission") != std::string::npos);

    const std::string report = path("validate_e.json");
    CHECK(run({"validate", "--config", "builtin:E", "--out", report}).code == 0);
    CHECK(json::parse(slurp(report))["ok"] == true);
    CHECK(std::filesystem::exists(report + ".manifest.json"));
}

TEST_CASE("example writes loadable configs") {
    for (const char* name : {"D", "P", "E"}) {
        const std::string out = path(std::string("example_") + name + ".json");
        REQUIRE(run({"example", name, "--out", out}).code == 0);
        CHECK(run({"validate", "--config", out}).code == 0);
        const json manifest = json::parse(slurp(out + ".manifest.json"));
        CHECK(manifest["command"] == "example");
        CHECK_FALSE(manifest["notes"].empty());
        CHECK(manifest["config_digest"] == cli::config_digest(builtin_config(name)));
    }
    const json m = json::parse(slurp(path("example_P.json.manifest.json")));
    CHECK(m["notes"].dump().find("-0.5") != std::string::npos);
    CHECK(run({"example", "Z"}).code == 1);
    CHECK(json::parse(run({"example", "D"}).out)["domain"]["b"] == std::numbers::pi);
}

TEST_CASE("eigs") {
    const std::string a = path("eigs_a.csv"), b = path("eigs_b.csv");
    REQUIRE(run({"eigs", "--config", "builtin:D", "--range", "0.5:30", "--out", a}).code == 0);
    REQUIRE(run({"eigs", "--config", "builtin:D", "--range", "0.5:30", "--out", b}).code == 0);
    const std::string body = slurp(a);
    CHECK(body == slurp(b));
    CHECK(body.find('\r') == std::string::npos);
    const auto rows = csv_rows(body);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"index", "lambda", "residual", "omega_derivative", "flag"});
    for (int n = 1; n <= 5; ++n) {
        CHECK(rows[n][0] == std::to_string(n));
        CHECK(std::abs(std::stod(rows[n][1]) - n * n) <= 1e-7 * n * n);
        CHECK(rows[n][4] == "simple");
    }
    const json manifest = json::parse(slurp(a + ".manifest.json"));
    for (const char* key : {"command", "config_digest", "tool_version", "integrator", "timestamp", "outputs"})
        CHECK(manifest.contains(key));
    CHECK(manifest["integrator"]["steps_per_side"] == 2000);

    Result half = run({"eigs", "--config", "builtin:D", "--range", "0.5:30", "--tol", "5e-11"});
    const auto hr = csv_rows(half.out);
    REQUIRE(hr.size() == 6);
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(std::stod(hr[n][1]) - std::stod(rows[n][1])) <= 1e-9);

    Result js = run({"eigs", "--config", "builtin:P", "--range", "0.1:40", "--format", "json"});
    REQUIRE(js.code == 0);
    const json j = json::parse(js.out);
    CHECK(j["eigenvalues"].size() == 3);

    CHECK(run({"eigs", "--config", "builtin:D"}).code == 1);
    CHECK(run({"eigs", "--config", "builtin:D", "--range", "5:1"}).code == 1);
    CHECK(run({"eigs", "--config", "builtin:D", "--range", "0:1", "--format", "svg"}).code == 1);
}

TEST_CASE("green") {
    const std::string csv = path("green_d.csv");
    REQUIRE(run({"green", "--config", "builtin:D", "--lambda", "0.25", "--out", csv}).code == 0);
    const auto rows = csv_rows(slurp(csv));
    REQUIRE(rows.size() == 1 + 129 * 129);
    CHECK(rows[0] == std::vector<std::string>{"x", "y", "G"});
    bool found = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::stod(rows[i][0]) == std::numbers::pi / 2 && std::stod(rows[i][1]) == std::numbers::pi / 2) {
            CHECK(std::abs(std::stod(rows[i][2]) + 1.0) <= 1e-6);
            found = true;
        }
    }
    CHECK(found);

    Result at = run({"green", "--config", "builtin:D", "--lambda", "1"});
    CHECK(at.code == 3);
    CHECK(at.err.find("within 1e-6 of eigenvalue") != std::string::npos);

    const std::string svg = path("green_p3.svg");
    REQUIRE(run({"green", "--config", "builtin:P", "--lambda", "3", "--format", "svg", "--out", svg}).code == 0);
    const std::string s = slurp(svg);
    CHECK(s.rfind("<?xml", 0) == 0);
    CHECK(s.find("λ = 3)") != std::string::npos);
    CHECK(s.find("class=\"interface\"") != std::string::npos);
    CHECK(s.find("</svg>") != std::string::npos);

    Result mu = run({"green", "--config", "builtin:P", "--lambda", "2", "--mu-squared", "--nx", "17", "--ny", "17"});
    Result four = run({"green", "--config", "builtin:P", "--lambda", "4", "--nx", "17", "--ny", "17"});
    REQUIRE(mu.code == 0);
    CHECK(mu.out == four.out);

    Result js = run({"green", "--config", "builtin:P", "--lambda", "15", "--format", "json", "--nx", "33", "--ny", "33"});
    REQUIRE(js.code == 0);
    CHECK(json::parse(js.out)["values"].size() == 33);
    CHECK(run({"green", "--config", "builtin:P"}).code == 1);
}

TEST_CASE("resolve") {
    Result zero = run({"resolve", "--config", "builtin:D", "--lambda", "0.25"});
    REQUIRE(zero.code == 0);
    const auto zr = csv_rows(zero.out);
    CHECK(zr[0] == std::vector<std::string>{"x", "Y", "Yprime"});
    CHECK(zr.size() == 1 + 2 * 2001);
    for (std::size_t i = 1; i < zr.size(); ++i) CHECK(std::stod(zr[i][1]) == 0.0);

    const std::string out = path("resolve_d.csv");
    REQUIRE(run({"resolve", "--config", "builtin:D", "--lambda", "0.25", "--u-minus", "sin(x)", "--u-plus", "sin(x)",
                 "--out", out})
                .code == 0);
    const auto rows = csv_rows(slurp(out));
    for (std::size_t i = 1; i < rows.size(); i += 97)
        CHECK(std::abs(std::stod(rows[i][1]) + 4.0 / 3.0 * std::sin(std::stod(rows[i][0]))) <= 1e-6);
    const json report = json::parse(slurp(out + ".report.json"));
    CHECK(report["f1"].is_null());
    for (const char* k : {"ode", "bc_left", "bc_right", "transmission"}) CHECK(report["residuals"][k] <= 1e-4);

    Result e = run({"resolve", "--config", "builtin:E", "--lambda", "3", "--u-minus", "1", "--u1", "2", "--u2", "-1",
                    "--format", "json"});
    REQUIRE(e.code == 0);
    const json ej = json::parse(e.out);
    CHECK(ej["f1"].is_number());
    CHECK(ej["nodes"]["x"].size() == 4002);

    CHECK(run({"resolve", "--config", "builtin:D", "--lambda", "4"}).code == 3);
    CHECK(run({"resolve", "--config", "builtin:D", "--lambda", "0.25", "--u-minus", "sin("}).code == 1);
}

TEST_CASE("expand") {
    Result r = run({"expand", "--config", "builtin:D", "--range", "0.5:110", "--f-minus", "x*(pi - x)", "--f-plus",
                    "x*(pi - x)", "--terms", "10", "--format", "json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["coefficients"].size() == 10);
    CHECK(std::abs(j["coefficients"][0]["coefficient"].get<double>() -
                   std::sqrt(std::numbers::pi / 2) * 8 / std::numbers::pi) <= 1e-5);
    CHECK(j["deficit"].get<double>() < 1e-3);
    CHECK(run({"expand", "--config", "builtin:D", "--range", "0.5:10", "--f-minus", "1", "--f-plus", "1", "--terms",
               "9"})
              .code == 3);
}

TEST_CASE("verify") {
    Result d = run({"verify", "--config", "builtin:D"});
    INFO(d.out);
    CHECK(d.code == 0);
    CHECK(d.out.find("fail") == std::string::npos);

    Result p = run({"verify", "--config", "builtin:P"});
    INFO(p.out);
    CHECK(p.code == 0);
    CHECK(p.out.find("skip  gram_orthonormality") != std::string::npos);
    CHECK(p.out.find("indefinite") != std::string::npos);

    Result e = run({"verify", "--config", "builtin:E", "--range=-20:150"});
    INFO(e.out);
    CHECK(e.code == 0);

    json j = config_to_json(builtin_config("D"));
    j["transmission"]["beta"] = {{1, 0, 0, 0}, {0, 1, 0, 0}};
    const std::string bad = path("singular.json");
    std::ofstream(bad) << j.dump();
    Result s = run({"verify", "--config", bad});
    CHECK(s.code == 2);
    CHECK(s.out.empty());
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"eigs", "--range", "0:1"}).code == 1);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"validate", "--config", "/does/not/exist.json"}).code == 2);
}
