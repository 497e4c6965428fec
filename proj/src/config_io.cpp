#include "slgreen/config_io.hpp"

#include "slgreen/error.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace slgreen {

using nlohmann::json;

namespace {

void only_fields(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    std::set<std::string> names(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!names.count(it.key())) throw ConfigError(path + "/" + it.key() + ": unknown field");
}

const json& field(const json& j, const std::string& path, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ConfigError(path + "/" + name + ": missing required field");
    return *it;
}

double number(const json& j, const std::string& path, const char* name) {
    const json& v = field(j, path, name);
    if (!v.is_number()) throw ConfigError(path + "/" + name + ": expected a number");
    return v.get<double>();
}

Expr expression(const json& j, const std::string& path, const char* name) {
    const json& v = field(j, path, name);
    if (v.is_number()) return Expr::constant(v.get<double>());
    if (!v.is_string()) throw ConfigError(path + "/" + name + ": expected an expression string");
    try {
        return Expr::parse(v.get<std::string>());
    } catch (const ParseError& e) {
        throw ConfigError(path + "/" + name + ": " + e.what());
    }
}

BoundaryCoeffs boundary(const json& j, const std::string& path, int index) {
    const std::string k = std::to_string(index);
    const std::string n0 = "alpha" + k + "0", n1 = "alpha" + k + "1";
    const std::string n0p = n0 + "p", n1p = n1 + "p";
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != n0 && it.key() != n1 && it.key() != n0p && it.key() != n1p)
            throw ConfigError(path + "/" + it.key() + ": unknown field");
    return {number(j, path, n0.c_str()), number(j, path, n1.c_str()), number(j, path, n0p.c_str()),
            number(j, path, n1p.c_str())};
}

}  // namespace

ProblemConfig config_from_json(const json& j) {
    only_fields(j, "", {"domain", "p", "q", "boundary_left", "boundary_right", "transmission", "mode", "integrator"});
    ProblemConfig cfg;

    const json& dom = field(j, "", "domain");
    only_fields(dom, "/domain", {"a", "c", "b"});
    cfg.a = number(dom, "/domain", "a");
    cfg.c = number(dom, "/domain", "c");
    cfg.b = number(dom, "/domain", "b");

    const json& p = field(j, "", "p");
    only_fields(p, "/p", {"minus", "plus"});
    cfg.p_minus = number(p, "/p", "minus");
    cfg.p_plus = number(p, "/p", "plus");

    const json& q = field(j, "", "q");
    only_fields(q, "/q", {"minus", "plus"});
    cfg.q_minus = expression(q, "/q", "minus");
    cfg.q_plus = expression(q, "/q", "plus");

    cfg.left = boundary(field(j, "", "boundary_left"), "/boundary_left", 1);
    cfg.right = boundary(field(j, "", "boundary_right"), "/boundary_right", 2);

    const json& t = field(j, "", "transmission");
    only_fields(t, "/transmission", {"beta"});
    const json& beta = field(t, "/transmission", "beta");
    if (!beta.is_array() || beta.size() != 2) throw ConfigError("/transmission/beta: expected a 2x4 array");
    for (std::size_t r = 0; r < 2; ++r) {
        const json& row = beta[r];
        const std::string rp = "/transmission/beta/" + std::to_string(r);
        if (!row.is_array() || row.size() != 4) throw ConfigError(rp + ": expected 4 numbers");
        for (std::size_t c = 0; c < 4; ++c) {
            if (!row[c].is_number()) throw ConfigError(rp + "/" + std::to_string(c) + ": expected a number");
            cfg.transmission.beta[r][c] = row[c].get<double>();
        }
    }

    if (auto it = j.find("mode"); it != j.end()) {
        if (*it == "strict") cfg.mode = Mode::Strict;
        else if (*it == "lenient") cfg.mode = Mode::Lenient;
        else throw ConfigError("/mode: expected \"strict\" or \"lenient\"");
    }
    if (auto it = j.find("integrator"); it != j.end()) {
        only_fields(*it, "/integrator", {"steps_per_side"});
        const json& n = field(*it, "/integrator", "steps_per_side");
        if (!n.is_number_integer()) throw ConfigError("/integrator/steps_per_side: expected an integer");
        cfg.integrator.steps_per_side = n.get<int>();
    }
    return cfg;
}

ProblemConfig config_from_string(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(j);
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_string(ss.str());
}

json config_to_json(const ProblemConfig& cfg) {
    auto src = [](const Expr& e) { return e.source().empty() ? e.to_string() : e.source(); };
    json j;
    j["domain"] = {{"a", cfg.a}, {"c", cfg.c}, {"b", cfg.b}};
    j["p"] = {{"minus", cfg.p_minus}, {"plus", cfg.p_plus}};
    j["q"] = {{"minus", src(cfg.q_minus)}, {"plus", src(cfg.q_plus)}};
    j["boundary_left"] = {{"alpha10", cfg.left.c0}, {"alpha11", cfg.left.c1},
                          {"alpha10p", cfg.left.c0p}, {"alpha11p", cfg.left.c1p}};
    j["boundary_right"] = {{"alpha20", cfg.right.c0}, {"alpha21", cfg.right.c1},
                           {"alpha20p", cfg.right.c0p}, {"alpha21p", cfg.right.c1p}};
    j["transmission"] = {{"beta", {cfg.transmission.beta[0], cfg.transmission.beta[1]}}};
    j["mode"] = to_string(cfg.mode);
    j["integrator"] = {{"steps_per_side", cfg.integrator.steps_per_side}};
    return j;
}

ProblemConfig builtin_config(std::string_view name) {
    ProblemConfig cfg;
    if (name == "D") {
        cfg.a = 0.0;
        cfg.c = std::numbers::pi / 2;
        cfg.b = std::numbers::pi;
        cfg.q_minus = Expr::parse("0");
        cfg.q_plus = Expr::parse("0");
        cfg.left = {1.0, 0.0, 0.0, 0.0};
        cfg.right = {1.0, 0.0, 0.0, 0.0};
        cfg.transmission.beta = {{{1.0, 0.0, -1.0, 0.0}, {0.0, 1.0, 0.0, -1.0}}};
    } else if (name == "P") {
        cfg.a = -1.0;
        cfg.c = 0.0;
        cfg.b = 1.0;
        cfg.q_minus = Expr::parse("0");
        cfg.q_plus = Expr::parse("0");
        cfg.left = {1.0, 0.0, 0.0, 1.0};    // y(-1) + λ y'(-1) = 0
        cfg.right = {0.0, -1.0, 1.0, 0.0};  // λ y(1) + y'(1) = 0
        cfg.transmission.beta = {{{1.0, 0.0, -1.0, 0.0}, {0.0, 1.0, 0.0, -0.5}}};
    } else if (name == "E") {
        cfg.a = 0.0;
        cfg.c = 0.4;
        cfg.b = 1.0;
        cfg.p_minus = 1.0;
        cfg.p_plus = 2.0;
        cfg.q_minus = Expr::parse("x");
        cfg.q_plus = Expr::parse("1 + x^2");
        cfg.left = {0.0, 1.0, 1.0, 0.0};   // y'(0) = -λ y(0)
        cfg.right = {0.0, 1.0, 1.0, 0.0};  // y'(1) = λ y(1)
        cfg.transmission.beta = {{{2.0, 0.5, -1.0, 0.0}, {0.0, 1.0, 0.3, -3.0}}};
        cfg.mode = Mode::Strict;
    } else {
        throw ConfigError("unknown built-in config '" + std::string(name) + "' (expected D, P or E)");
    }
    return cfg;
}

std::vector<std::string> builtin_names() { return {"D", "P", "E"}; }

std::vector<std::string> builtin_notes(std::string_view name) {
    if (name == "D")
        return {"-y'' = λy on [0, π], y(0) = y(π) = 0, identity transmission at c = π/2",
                "eigenvalues n², closed form ω(λ) = sin(√λ π)/√λ"};
    if (name == "P")
        return {"-y'' = λy on [-1,0) ∪ (0,1], y(-1) + λy'(-1) = 0, λy(1) + y'(1) = 0",
                "transmission read as continuity of y plus y'(0-) = 2 y'(0+); the printed pair "
                "y'(0-) = y(+0), y'(-0) = 2y'(+0) is contradictory",
                "encoded T = [[1,0,-1,0],[0,1,0,-0.5]] so the forward jump is (u, v) -> (u, v/2)",
                "figure parameter μ is passed as λ; --mu-squared uses λ = μ²",
                "θ1 = θ2 = -1: indefinite inner product, lenient mode"};
    if (name == "E")
        return {"strict-mode configuration with θ1 = θ2 = 1 and λ in both end conditions",
                "p⁻ = 1, p⁺ = 2, q⁻ = x, q⁺ = 1 + x², Δ12 = 2, Δ34 = 3"};
    throw ConfigError("unknown built-in config '" + std::string(name) + "'");
}

}  // namespace slgreen
