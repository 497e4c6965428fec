#include "slgreen/greens.hpp"

#include "slgreen/error.hpp"
#include "slgreen/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <thread>

namespace slgreen {

namespace {

void require_regular(double omega, double scale, double lambda) {
    if (std::abs(omega) <= 1e-10 * std::max(1.0, scale)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "lambda = %.17g is an eigenvalue to working precision (|ω| = %.3e)", lambda,
                      std::abs(omega));
        throw AtEigenvalueError(buf, lambda);
    }
}

}  // namespace

double green_eval(const FundamentalSystem& fs, double x, double y) {
    require_regular(fs.omega, fs.scale, fs.lambda);
    const double a = fs.phi_minus.lo();
    const double b = fs.phi_plus.hi();
    const double c = fs.c();
    if (x == c || y == c) throw Error("Green's function is undefined on the interface x = c");
    if (x < a || x > b || y < a || y > b) throw OutOfSpanError("Green's function argument outside [a, b]");
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    return fs.phi(lo).y * fs.psi(hi).y / fs.omega;
}

double GreenGrid::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

namespace {

std::vector<double> banded_axis(double a, double b, double c, int n, double eps) {
    std::vector<double> xs(n + 1);
    for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / n;
    xs[n] = b;
    for (double& x : xs) {
        if (x < c && x > c - eps) x = c - eps;
        else if (x > c && x < c + eps) x = c + eps;
    }
    return xs;
}

}  // namespace

GreenGrid green_grid(const Problem& problem, double lambda, int nx, int ny, double eps_c) {
    if (nx < 8 || ny < 8) throw Error("green_grid: nx and ny must be at least 8");
    const ProblemConfig& cfg = problem.config();
    const FundamentalSystem fs = fundamental_system(problem, lambda);
    require_regular(fs.omega, fs.scale, lambda);

    GreenGrid grid;
    grid.lambda = lambda;
    grid.eps_c = eps_c > 0.0 ? eps_c : (cfg.b - cfg.a) / 1000.0;
    grid.xs = banded_axis(cfg.a, cfg.b, cfg.c, nx, grid.eps_c);
    grid.ys = banded_axis(cfg.a, cfg.b, cfg.c, ny, grid.eps_c);
    grid.values.assign(grid.xs.size() * grid.ys.size(), 0.0);

    // Φ and Ψ once per abscissa; rows are then products.
    auto traces = [&](const std::vector<double>& pts, std::vector<double>& phi, std::vector<double>& psi) {
        phi.resize(pts.size());
        psi.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            phi[i] = fs.phi(pts[i]).y;
            psi[i] = fs.psi(pts[i]).y;
        }
    };
    std::vector<double> phi_x, psi_x, phi_y, psi_y;
    traces(grid.xs, phi_x, psi_x);
    traces(grid.ys, phi_y, psi_y);

    const std::size_t rows = grid.xs.size();
    const std::size_t cols = grid.ys.size();
    const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), rows));
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t) {
        jobs.push_back(std::async(std::launch::async, [&, t] {
            for (std::size_t i = t; i < rows; i += threads) {
                for (std::size_t j = 0; j < cols; ++j) {
                    const double v = grid.xs[i] <= grid.ys[j] ? phi_x[i] * psi_y[j] : phi_y[j] * psi_x[i];
                    grid.values[i * cols + j] = v / fs.omega;
                }
            }
        }));
    }
    for (auto& j : jobs) j.get();
    return grid;
}

int diagonal_sign_changes(const GreenGrid& grid) {
    if (grid.xs.size() != grid.ys.size()) throw Error("diagonal_sign_changes needs a square grid");
    int count = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.xs.size(); ++i) {
        const double v = grid.at(i, i);
        if (v == 0.0) continue;
        if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++count;
        prev = v;
    }
    return count;
}

HVector resolve(const Problem& problem, double lambda, const Expr& u_minus, const Expr& u_plus, double u1,
                double u2) {
    const ProblemConfig& cfg = problem.config();
    const Minors& m = problem.minors();
    const FundamentalSystem fs = fundamental_system(problem, lambda);
    require_regular(fs.omega, fs.scale, lambda);
    const double w = fs.omega;
    const int n = problem.steps();
    if (n % 2 != 0) throw Error("resolve: steps_per_side must be even for Simpson quadrature");

    auto side_data = [&](Side side, const SolutionPath& phi, const SolutionPath& psi, const Expr& u,
                         std::vector<double>& us, std::vector<double>& cum_phi, std::vector<double>& cum_psi) {
        const auto xs = problem.nodes(side);
        us.resize(xs.size());
        std::vector<double> fu(xs.size()), gu(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            us[i] = u.eval(xs[i]);
            fu[i] = phi.nodes[i].y * us[i];
            gu[i] = psi.nodes[i].y * us[i];
        }
        cum_phi = cumulative_simpson(fu, problem.step(side));
        cum_psi = cumulative_simpson(gu, problem.step(side));
        cum_phi.back() = simpson(fu, problem.step(side));
        cum_psi.back() = simpson(gu, problem.step(side));
    };

    std::vector<double> ul, ur, phi_l, psi_l, phi_r, psi_r;
    side_data(Side::Left, fs.phi_minus, fs.psi_minus, u_minus, ul, phi_l, psi_l);
    side_data(Side::Right, fs.phi_plus, fs.psi_plus, u_plus, ur, phi_r, psi_r);
    const double total_phi_left = phi_l.back();
    const double total_psi_right = psi_r.back();

    SolutionPath yl, yr;
    yl.lambda = yr.lambda = lambda;
    yl.side = Side::Left;
    yr.side = Side::Right;
    yl.nodes.resize(n + 1);
    yr.nodes.resize(n + 1);

    const auto ql = problem.q_table(Side::Left);
    const auto qr = problem.q_table(Side::Right);
    {
        const double k_in = m.d34 / (cfg.p_minus * w);
        const double k_phi = m.d12 / w * (total_psi_right / cfg.p_plus - u2);
        const double k_psi = m.d34 * u1 / w;
        const double total_psi = psi_l.back();
        for (int i = 0; i <= n; ++i) {
            const PathNode& f = fs.phi_minus.nodes[i];
            const PathNode& g = fs.psi_minus.nodes[i];
            const double below = phi_l[i];
            const double above = total_psi - psi_l[i];
            PathNode& out = yl.nodes[i];
            out.x = f.x;
            out.y = k_in * (g.y * below + f.y * above) + k_phi * f.y + k_psi * g.y;
            out.yp = k_in * (g.yp * below + f.yp * above) + k_phi * f.yp + k_psi * g.yp;
            out.ypp = ((ql[2 * i] - lambda) * out.y + ul[i]) / cfg.p_minus;
        }
    }
    {
        const double k_in = m.d12 / (cfg.p_plus * w);
        const double k_psi = m.d34 / w * (total_phi_left / cfg.p_minus + u1);
        const double k_phi = -m.d12 * u2 / w;
        const double total_psi = psi_r.back();
        for (int i = 0; i <= n; ++i) {
            const PathNode& f = fs.phi_plus.nodes[i];
            const PathNode& g = fs.psi_plus.nodes[i];
            const double below = phi_r[i];
            const double above = total_psi - psi_r[i];
            PathNode& out = yr.nodes[i];
            out.x = f.x;
            out.y = k_in * (g.y * below + f.y * above) + k_phi * f.y + k_psi * g.y;
            out.yp = k_in * (g.yp * below + f.yp * above) + k_phi * f.yp + k_psi * g.yp;
            out.ypp = ((qr[2 * i] - lambda) * out.y + ur[i]) / cfg.p_plus;
        }
    }
    return make_hvector(problem, PathPair{std::move(yl), std::move(yr)});
}

ResolventReport verify_resolvent(const Problem& problem, double lambda, const HVector& y, const Expr& u_minus,
                                 const Expr& u_plus, double u1, double u2) {
    const ProblemConfig& cfg = problem.config();
    ResolventReport r;
    for (Side side : {Side::Left, Side::Right}) {
        const auto xs = problem.nodes(side);
        const auto q = problem.q_table(side);
        const Expr& u = side == Side::Left ? u_minus : u_plus;
        const std::vector<double> ys = y.f.sample(problem, side);
        const double h = problem.step(side);
        const double p = problem.p(side);
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
            const double d2 = (ys[i + 1] - 2.0 * ys[i] + ys[i - 1]) / (h * h);
            const double res = (lambda - q[2 * i]) * ys[i] + p * d2 - u.eval(xs[i]);
            r.ode = std::max(r.ode, std::abs(res));
        }
    }
    const BoundaryValues bv = boundary_values(problem, y.f);
    r.bc_left = std::abs(lambda * bv.Bpa - bv.Ba - u1);
    r.bc_right = std::abs(-lambda * bv.Bpb - bv.Bb - u2);
    const State minus = y.f.eval(Side::Left, cfg.c);
    const State plus = y.f.eval(Side::Right, cfg.c);
    const State expected = jump_forward(problem.minors(), minus);
    r.transmission = std::max(std::abs(plus.y - expected.y), std::abs(plus.yp - expected.yp));
    if (y.f1) r.components = std::max(r.components, std::abs(*y.f1 - bv.Bpa));
    if (y.f2) r.components = std::max(r.components, std::abs(*y.f2 + bv.Bpb));
    return r;
}

}  // namespace slgreen
