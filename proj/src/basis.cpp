#include "slgreen/basis.hpp"

#include "slgreen/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace slgreen {

State initial_left(const ProblemConfig& cfg, double lambda) {
    return {cfg.left.c1 - lambda * cfg.left.c1p, cfg.left.c0 - lambda * cfg.left.c0p};
}

State initial_right(const ProblemConfig& cfg, double lambda) {
    return {cfg.right.c1 + lambda * cfg.right.c1p, cfg.right.c0 + lambda * cfg.right.c0p};
}

State jump_forward(const Minors& m, State s) {
    if (m.d12 == 0.0) throw SingularBlockError("transmission matrix left block singular (Δ₁₂ = 0)");
    return {(m.d23 * s.y + m.d24 * s.yp) / m.d12, -(m.d13 * s.y + m.d14 * s.yp) / m.d12};
}

State jump_backward(const Minors& m, State s) {
    if (m.d34 == 0.0) throw SingularBlockError("transmission matrix right block singular (Δ₃₄ = 0)");
    return {-(m.d14 * s.y + m.d24 * s.yp) / m.d34, (m.d13 * s.y + m.d23 * s.yp) / m.d34};
}

TransmissionResidual transmission_residual(const TransmissionSpec& t, State left, State right) {
    auto rows = [&](State minus, State plus) {
        double worst = 0.0;
        for (const auto& r : t.beta) {
            const double v = r[0] * minus.y + r[1] * minus.yp + r[2] * plus.y + r[3] * plus.yp;
            worst = std::max(worst, std::abs(v));
        }
        return worst;
    };
    return {rows(left, right), rows(right, left)};
}

State FundamentalSystem::phi(double x) const {
    return x <= c() ? eval_path(phi_minus, x) : eval_path(phi_plus, x);
}

State FundamentalSystem::psi(double x) const {
    return x <= c() ? eval_path(psi_minus, x) : eval_path(psi_plus, x);
}

FundamentalSystem fundamental_system(const Problem& problem, double lambda) {
    const ProblemConfig& cfg = problem.config();
    const Minors& m = problem.minors();
    FundamentalSystem fs;
    fs.lambda = lambda;
    fs.phi_minus = integrate(problem, Side::Left, lambda, cfg.a, cfg.c, initial_left(cfg, lambda));
    fs.phi_plus = integrate(problem, Side::Right, lambda, cfg.c, cfg.b, jump_forward(m, fs.phi_minus.back()));
    fs.psi_plus = integrate(problem, Side::Right, lambda, cfg.b, cfg.c, initial_right(cfg, lambda));
    fs.psi_minus = integrate(problem, Side::Left, lambda, cfg.c, cfg.a, jump_backward(m, fs.psi_plus.front()));

    const PathNode& pa = fs.phi_minus.nodes.front();
    const PathNode& sa = fs.psi_minus.nodes.front();
    const PathNode& pb = fs.phi_plus.nodes.back();
    const PathNode& sb = fs.psi_plus.nodes.back();
    fs.omega_minus = pa.y * sa.yp - pa.yp * sa.y;
    fs.omega_plus = pb.y * sb.yp - pb.yp * sb.y;
    fs.omega = m.d34 * fs.omega_minus;
    fs.scale = std::max(std::abs(m.d34) * (std::abs(pa.y * sa.yp) + std::abs(pa.yp * sa.y)),
                        std::abs(m.d12) * (std::abs(pb.y * sb.yp) + std::abs(pb.yp * sb.y)));

    const double mismatch = std::abs(m.d34 * fs.omega_minus - m.d12 * fs.omega_plus);
    if (mismatch > 1e-5 * std::max(1.0, fs.scale)) {
        char buf[192];
        std::snprintf(buf, sizeof buf,
                      "characteristic relation violated at lambda = %.17g (|Δ34 ω⁻ - Δ12 ω⁺| = %.3e); "
                      "increase steps_per_side",
                      lambda, mismatch);
        throw InconsistencyError(buf);
    }
    return fs;
}

double omega(const Problem& problem, double lambda) { return fundamental_system(problem, lambda).omega; }

}  // namespace slgreen
