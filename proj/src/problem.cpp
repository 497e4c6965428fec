#include "slgreen/problem.hpp"

#include "slgreen/error.hpp"

#include <cstdio>
#include <utility>

namespace slgreen {

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }
const char* to_string(Mode mode) { return mode == Mode::Strict ? "strict" : "lenient"; }

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Warn: return "warn";
        case CheckStatus::Fail: return "fail";
    }
    return "?";
}

Minors minors(const TransmissionSpec& t) {
    const auto& r1 = t.beta[0];
    const auto& r2 = t.beta[1];
    auto det = [&](int i, int j) { return r1[i] * r2[j] - r1[j] * r2[i]; };
    return {det(0, 1), det(0, 2), det(0, 3), det(1, 2), det(1, 3), det(2, 3)};
}

bool ValidationReport::ok() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

std::vector<std::string> ValidationReport::warnings() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (c.status == CheckStatus::Warn) out.push_back(c.message);
    return out;
}

std::vector<std::string> ValidationReport::failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) out.push_back(c.message);
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void check_theta(ValidationReport& r, const ProblemConfig& cfg, int index, const BoundaryCoeffs& bc) {
    const std::string sym = "θ" + std::string(index == 1 ? "₁" : "₂");
    const char* side = index == 1 ? "left" : "right";
    const double theta = bc.theta();
    ValidationCheck chk{sym + " > 0", CheckStatus::Pass, sym + " = " + fmt(theta) + " > 0"};
    if (bc.degenerate()) {
        chk.status = CheckStatus::Warn;
        chk.message = sym + " = 0 (degenerate " + std::string(side) + " boundary mode)";
    } else if (theta < 0.0) {
        chk.status = cfg.mode == Mode::Strict ? CheckStatus::Fail : CheckStatus::Warn;
        chk.message = sym + " = " + fmt(theta) + " < 0";
    } else if (theta == 0.0) {
        chk.status = cfg.mode == Mode::Strict ? CheckStatus::Fail : CheckStatus::Warn;
        chk.message = sym + " = 0 with a λ-dependent " + std::string(side) +
                      " row (boundary condition factorizes)";
    }
    r.checks.push_back(std::move(chk));
}

void check_q(ValidationReport& r, const char* name, const Expr& q, double lo, double hi) {
    ValidationCheck chk{std::string(name) + " evaluable", CheckStatus::Pass,
                        std::string(name) + " finite at interval ends"};
    try {
        q.eval(lo);
        q.eval(hi);
        q.eval(0.5 * (lo + hi));
    } catch (const DomainError& e) {
        chk.status = CheckStatus::Fail;
        chk.message = std::string(name) + ": " + e.what();
    }
    r.checks.push_back(std::move(chk));
}

}  // namespace

ValidationReport validate(const ProblemConfig& cfg) {
    ValidationReport r;
    r.minors = cfg.minors();
    r.theta1 = cfg.theta1();
    r.theta2 = cfg.theta2();
    const bool strict = cfg.mode == Mode::Strict;
    const Minors& m = r.minors;

    auto add = [&](std::string name, bool pass, CheckStatus on_fail, std::string good, std::string bad) {
        r.checks.push_back({std::move(name), pass ? CheckStatus::Pass : on_fail, pass ? good : bad});
    };

    add("a < c < b", cfg.a < cfg.c && cfg.c < cfg.b, CheckStatus::Fail, "a < c < b",
        "domain must satisfy a < c < b (got a=" + fmt(cfg.a) + ", c=" + fmt(cfg.c) + ", b=" + fmt(cfg.b) + ")");
    add("p⁻ > 0", cfg.p_minus > 0.0, CheckStatus::Fail, "p⁻ > 0", "p⁻ must be positive");
    add("p⁺ > 0", cfg.p_plus > 0.0, CheckStatus::Fail, "p⁺ > 0", "p⁺ must be positive");
    const int n = cfg.integrator.steps_per_side;
    add("steps_per_side", n >= 4 && n % 2 == 0, CheckStatus::Fail, "steps per side even",
        "steps_per_side must be an even integer >= 4 (got " + std::to_string(n) + ")");
    add("left boundary", !cfg.left.all_zero(), CheckStatus::Fail, "left boundary row nonzero",
        "left boundary coefficients are all zero");
    add("right boundary", !cfg.right.all_zero(), CheckStatus::Fail, "right boundary row nonzero",
        "right boundary coefficients are all zero");
    add("Δ₁₂ ≠ 0", m.d12 != 0.0, CheckStatus::Fail, "Δ₁₂ = " + fmt(m.d12),
        "transmission matrix left block singular (Δ₁₂ = 0)");
    add("Δ₃₄ ≠ 0", m.d34 != 0.0, CheckStatus::Fail, "Δ₃₄ = " + fmt(m.d34),
        "transmission matrix right block singular (Δ₃₄ = 0)");
    if (m.d12 != 0.0)
        add("Δ₁₂ > 0", m.d12 > 0.0, strict ? CheckStatus::Fail : CheckStatus::Warn, "Δ₁₂ > 0",
            "Δ₁₂ = " + fmt(m.d12) + " < 0");
    if (m.d34 != 0.0)
        add("Δ₃₄ > 0", m.d34 > 0.0, strict ? CheckStatus::Fail : CheckStatus::Warn, "Δ₃₄ > 0",
            "Δ₃₄ = " + fmt(m.d34) + " < 0");
    check_theta(r, cfg, 1, cfg.left);
    check_theta(r, cfg, 2, cfg.right);
    if (cfg.a < cfg.c && cfg.c < cfg.b) {
        check_q(r, "q⁻", cfg.q_minus, cfg.a, cfg.c);
        check_q(r, "q⁺", cfg.q_plus, cfg.c, cfg.b);
    }
    return r;
}

HWeights h_weights(const ProblemConfig& cfg, Weighting weighting) {
    const Minors m = cfg.minors();
    HWeights w;
    w.active1 = cfg.theta1() != 0.0;
    w.active2 = cfg.theta2() != 0.0;
    if (weighting == Weighting::JumpConsistent) {
        w.left = m.d34 / cfg.p_minus;
        w.right = m.d12 / cfg.p_plus;
        if (w.active1) w.bound1 = m.d34 / cfg.theta1();
        if (w.active2) w.bound2 = m.d12 / cfg.theta2();
    } else {
        w.left = m.d12 / cfg.p_minus;
        w.right = m.d34 / cfg.p_plus;
        if (w.active1) w.bound1 = m.d12 / (cfg.p_minus * cfg.theta1());
        if (w.active2) w.bound2 = m.d34 / (cfg.p_plus * cfg.theta2());
    }
    return w;
}

namespace {

void sample_side(const ProblemConfig& cfg, double lo, double hi, const Expr& q,
                 std::vector<double>& xs, std::vector<double>& qs) {
    const int n = cfg.integrator.steps_per_side;
    xs.resize(n + 1);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / n;
    xs[n] = hi;
    qs.resize(2 * n + 1);
    for (int j = 0; j < 2 * n; ++j) qs[j] = q.eval(lo + (hi - lo) * j / (2 * n));
    qs[2 * n] = q.eval(hi);
}

}  // namespace

Problem::Problem(ProblemConfig config, Weighting weighting)
    : config_(std::move(config)), report_(validate(config_)), weighting_(weighting) {
    if (!report_.ok()) {
        std::string msg = "invalid problem configuration:";
        for (const auto& f : report_.failures()) msg += "\n  " + f;
        throw ConfigError(msg);
    }
    weights_ = h_weights(config_, weighting_);
    sample_side(config_, config_.a, config_.c, config_.q_minus, x_left_, q_left_);
    sample_side(config_, config_.c, config_.b, config_.q_plus, x_right_, q_right_);
}

}  // namespace slgreen
