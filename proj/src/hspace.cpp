#include "slgreen/hspace.hpp"

#include "slgreen/error.hpp"
#include "slgreen/quadrature.hpp"

namespace slgreen {

BoundaryValues boundary_functionals(const ProblemConfig& cfg, double fa, double fpa, double fb, double fpb) {
    return {cfg.left.c0 * fa - cfg.left.c1 * fpa, cfg.left.c0p * fa - cfg.left.c1p * fpa,
            cfg.right.c0 * fb - cfg.right.c1 * fpb, cfg.right.c0p * fb - cfg.right.c1p * fpb};
}

State FunctionPart::eval(Side side, double x) const {
    if (const auto* e = exprs()) {
        const Dual d = (side == Side::Left ? e->minus : e->plus).eval_dual(x);
        return {d.value, d.deriv};
    }
    const auto& p = *paths();
    return eval_path(side == Side::Left ? p.left : p.right, x);
}

std::vector<double> FunctionPart::sample(const Problem& problem, Side side) const {
    const auto xs = problem.nodes(side);
    std::vector<double> out(xs.size());
    if (const auto* e = exprs()) {
        const Expr& ex = side == Side::Left ? e->minus : e->plus;
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = ex.eval(xs[i]);
        return out;
    }
    const SolutionPath& path = side == Side::Left ? paths()->left : paths()->right;
    if (path.nodes.size() == xs.size() && path.nodes.front().x == xs.front() && path.nodes.back().x == xs.back()) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = path.nodes[i].y;
    } else {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval_path(path, xs[i]).y;
    }
    return out;
}

BoundaryValues boundary_values(const Problem& problem, const FunctionPart& f) {
    const ProblemConfig& cfg = problem.config();
    const State at_a = f.eval(Side::Left, cfg.a);
    const State at_b = f.eval(Side::Right, cfg.b);
    return boundary_functionals(cfg, at_a.y, at_a.yp, at_b.y, at_b.yp);
}

HVector make_hvector(const Problem& problem, FunctionPart f, bool zero_entries) {
    const BoundaryValues bv = boundary_values(problem, f);
    HVector v{std::move(f), std::nullopt, std::nullopt};
    if (problem.weights().active1) v.f1 = zero_entries ? 0.0 : bv.Bpa;
    if (problem.weights().active2) v.f2 = zero_entries ? 0.0 : -bv.Bpb;
    return v;
}

HSamples sample(const Problem& problem, const HVector& v) {
    const HWeights& w = problem.weights();
    if (v.f1.has_value() != w.active1)
        throw ConfigError(w.active1 ? "H vector lacks the left boundary component (θ₁ ≠ 0)"
                                    : "H vector has a left boundary component but θ₁ = 0");
    if (v.f2.has_value() != w.active2)
        throw ConfigError(w.active2 ? "H vector lacks the right boundary component (θ₂ ≠ 0)"
                                    : "H vector has a right boundary component but θ₂ = 0");
    return {v.f.sample(problem, Side::Left), v.f.sample(problem, Side::Right), v.f1.value_or(0.0),
            v.f2.value_or(0.0)};
}

namespace {

double weighted_l2(const std::vector<double>& f, const std::vector<double>& g, double h) {
    std::vector<double> prod(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) prod[i] = f[i] * g[i];
    return simpson(prod, h);
}

}  // namespace

double inner_product_H1(const Problem& problem, const HSamples& f, const HSamples& g) {
    const HWeights& w = problem.weights();
    return w.left * weighted_l2(f.left, g.left, problem.step(Side::Left)) +
           w.right * weighted_l2(f.right, g.right, problem.step(Side::Right));
}

double inner_product(const Problem& problem, const HSamples& f, const HSamples& g) {
    const HWeights& w = problem.weights();
    return inner_product_H1(problem, f, g) + w.bound1 * f.f1 * g.f1 + w.bound2 * f.f2 * g.f2;
}

double inner_product_H1(const Problem& problem, const FunctionPart& f, const FunctionPart& g) {
    HSamples fs{f.sample(problem, Side::Left), f.sample(problem, Side::Right)};
    HSamples gs{g.sample(problem, Side::Left), g.sample(problem, Side::Right)};
    return inner_product_H1(problem, fs, gs);
}

double inner_product_H(const Problem& problem, const HVector& f, const HVector& g) {
    return inner_product(problem, sample(problem, f), sample(problem, g));
}

}  // namespace slgreen
