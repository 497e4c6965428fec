#pragma once

#include "slgreen/integrate.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace slgreen {

/// Bₐ[f], B'ₐ[f], B_b[f], B'_b[f].
struct BoundaryValues {
    double Ba = 0.0;
    double Bpa = 0.0;
    double Bb = 0.0;
    double Bpb = 0.0;
};

BoundaryValues boundary_functionals(const ProblemConfig& config, double fa, double fpa, double fb, double fpb);

struct ExprPair {
    Expr minus;
    Expr plus;
};

struct PathPair {
    SolutionPath left;
    SolutionPath right;
};

/// Function on [a,c) ∪ (c,b], given by expressions or by stored trajectories.
class FunctionPart {
public:
    FunctionPart(ExprPair exprs) : data_(std::move(exprs)) {}
    FunctionPart(PathPair paths) : data_(std::move(paths)) {}

    /// Value and derivative on one side (x may be that side's end point).
    State eval(Side side, double x) const;
    /// Values at the problem's integration nodes on one side.
    std::vector<double> sample(const Problem& problem, Side side) const;

    const ExprPair* exprs() const { return std::get_if<ExprPair>(&data_); }
    const PathPair* paths() const { return std::get_if<PathPair>(&data_); }

private:
    std::variant<ExprPair, PathPair> data_;
};

/// Element (f, f1, f2) of L2[a,c) ⊕ L2(c,b] ⊕ C². f1 is present iff θ1 ≠ 0, f2 iff θ2 ≠ 0.
struct HVector {
    FunctionPart f;
    std::optional<double> f1;
    std::optional<double> f2;
};

BoundaryValues boundary_values(const Problem& problem, const FunctionPart& f);

/// (f, B'ₐ[f], -B'_b[f]) with disabled components left empty; zero_entries keeps
/// the active components but sets them to 0.
HVector make_hvector(const Problem& problem, FunctionPart f, bool zero_entries = false);

/// Pre-sampled H element; inner products on samples avoid re-evaluating f.
struct HSamples {
    std::vector<double> left;
    std::vector<double> right;
    double f1 = 0.0;
    double f2 = 0.0;
};

HSamples sample(const Problem& problem, const HVector& v);

double inner_product_H1(const Problem& problem, const FunctionPart& f, const FunctionPart& g);
double inner_product_H(const Problem& problem, const HVector& f, const HVector& g);
double inner_product(const Problem& problem, const HSamples& f, const HSamples& g);
/// H1 part only, on samples.
double inner_product_H1(const Problem& problem, const HSamples& f, const HSamples& g);

}  // namespace slgreen
