#pragma once

#include "slgreen/problem.hpp"

#include <vector>

namespace slgreen {

/// (y, y') at one point.
struct State {
    double y = 0.0;
    double yp = 0.0;
};

struct PathNode {
    double x = 0.0;
    double y = 0.0;
    double yp = 0.0;
    double ypp = 0.0;  // from the ODE; used for 4th-order dense output of y'
};

/// Trajectory of one solution on one subinterval, stored with ascending x.
struct SolutionPath {
    double lambda = 0.0;
    Side side = Side::Left;
    bool backward = false;  // integrated from the right end of the subinterval
    std::vector<PathNode> nodes;

    double lo() const { return nodes.front().x; }
    double hi() const { return nodes.back().x; }
    State front() const { return {nodes.front().y, nodes.front().yp}; }
    State back() const { return {nodes.back().y, nodes.back().yp}; }
};

/// Fixed-step classical RK4 for -p y'' + q y = λ y on one side.
///
/// [min(from_x, to_x), max(from_x, to_x)] must be the side's subinterval. Throws
/// DivergenceError when |y| or |y'| exceeds 1e300.
SolutionPath integrate(const Problem& problem, Side side, double lambda, double from_x, double to_x,
                       State init);

/// Cubic Hermite dense output; exact at nodes.
State eval_path(const SolutionPath& path, double x);

/// W(f, g; x) = f g' - f' g.
double wronskian(const SolutionPath& f, const SolutionPath& g, double x);

/// Same, evaluated at node i of two paths on the same grid.
double wronskian_at_node(const SolutionPath& f, const SolutionPath& g, std::size_t i);

}  // namespace slgreen
