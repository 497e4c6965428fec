#include "slgreen/integrate.hpp"

#include "slgreen/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace slgreen {

namespace {

constexpr double kDivergence = 1e300;

bool same_point(double a, double b, double span) { return std::abs(a - b) <= 1e-12 * span; }

}  // namespace

SolutionPath integrate(const Problem& problem, Side side, double lambda, double from_x, double to_x,
                       State init) {
    const double lo = problem.lo(side);
    const double hi = problem.hi(side);
    const double span = hi - lo;
    const bool backward = same_point(from_x, hi, span) && same_point(to_x, lo, span);
    if (!backward && !(same_point(from_x, lo, span) && same_point(to_x, hi, span)))
        throw Error(std::string("integration interval must be the ") + to_string(side) + " subinterval");
    if (!std::isfinite(init.y) || !std::isfinite(init.yp)) throw Error("non-finite initial data");

    const int n = problem.steps();
    const auto xs = problem.nodes(side);
    const auto q = problem.q_table(side);
    const double inv_p = 1.0 / problem.p(side);
    const double h = backward ? -(span / n) : span / n;

    SolutionPath path;
    path.lambda = lambda;
    path.side = side;
    path.backward = backward;
    path.nodes.resize(n + 1);

    auto accel = [&](int half, double y) { return (q[half] - lambda) * inv_p * y; };

    double y = init.y;
    double v = init.yp;
    int node = backward ? n : 0;
    const int dir = backward ? -1 : 1;
    path.nodes[node] = {xs[node], y, v, accel(2 * node, y)};
    for (int k = 0; k < n; ++k) {
        const int h0 = 2 * node;
        const int h1 = h0 + dir;
        const int h2 = h0 + 2 * dir;
        const double k1y = v;
        const double k1v = accel(h0, y);
        const double k2y = v + 0.5 * h * k1v;
        const double k2v = accel(h1, y + 0.5 * h * k1y);
        const double k3y = v + 0.5 * h * k2v;
        const double k3v = accel(h1, y + 0.5 * h * k2y);
        const double k4y = v + h * k3v;
        const double k4v = accel(h2, y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        node += dir;
        if (!(std::abs(y) <= kDivergence && std::abs(v) <= kDivergence)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "solution diverged at lambda = %.17g", lambda);
            throw DivergenceError(buf, lambda);
        }
        path.nodes[node] = {xs[node], y, v, accel(2 * node, y)};
    }
    return path;
}

State eval_path(const SolutionPath& path, double x) {
    const auto& nodes = path.nodes;
    const double lo = path.lo();
    const double hi = path.hi();
    const double span = hi - lo;
    if (x < lo - 1e-12 * span || x > hi + 1e-12 * span) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "x = %.17g outside path span [%.17g, %.17g]", x, lo, hi);
        throw OutOfSpanError(buf);
    }
    x = std::clamp(x, lo, hi);
    const std::size_t n = nodes.size() - 1;
    std::size_t i = static_cast<std::size_t>((x - lo) / span * static_cast<double>(n));
    i = std::min(i, n - 1);
    while (i > 0 && x < nodes[i].x) --i;
    while (i + 1 < n && x > nodes[i + 1].x) ++i;

    const PathNode& l = nodes[i];
    const PathNode& r = nodes[i + 1];
    if (x == l.x) return {l.y, l.yp};
    if (x == r.x) return {r.y, r.yp};
    const double h = r.x - l.x;
    const double t = (x - l.x) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return {h00 * l.y + h10 * h * l.yp + h01 * r.y + h11 * h * r.yp,
            h00 * l.yp + h10 * h * l.ypp + h01 * r.yp + h11 * h * r.ypp};
}

double wronskian(const SolutionPath& f, const SolutionPath& g, double x) {
    if (f.side != g.side || f.lambda != g.lambda) throw Error("wronskian of paths with different side or lambda");
    const State a = eval_path(f, x);
    const State b = eval_path(g, x);
    return a.y * b.yp - a.yp * b.y;
}

double wronskian_at_node(const SolutionPath& f, const SolutionPath& g, std::size_t i) {
    if (f.side != g.side || f.lambda != g.lambda) throw Error("wronskian of paths with different side or lambda");
    const PathNode& a = f.nodes.at(i);
    const PathNode& b = g.nodes.at(i);
    return a.y * b.yp - a.yp * b.y;
}

}  // namespace slgreen
