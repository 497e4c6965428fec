#pragma once

#include "slgreen/basis.hpp"
#include "slgreen/hspace.hpp"

#include <vector>

namespace slgreen {

/// G(x, y; λ) = Φ(min(x,y)) Ψ(max(x,y)) / ω(λ) with Φ, Ψ the piecewise basic solutions.
/// Throws AtEigenvalueError when |ω| <= 1e-10 · scale.
double green_eval(const FundamentalSystem& fs, double x, double y);

struct GreenGrid {
    double lambda = 0.0;
    double eps_c = 0.0;
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;  // row-major, xs.size() rows

    double at(std::size_t i, std::size_t j) const { return values[i * ys.size() + j]; }
    double max_abs() const;
};

/// nx+1 by ny+1 uniform grids over [a,b]; points inside (c-ε, c+ε) move to the
/// nearest band edge. A point exactly at c stays there and takes the left limit
/// G(c-0, ·), as Φ and Ψ do. eps_c <= 0 selects (b-a)/1000.
GreenGrid green_grid(const Problem& problem, double lambda, int nx, int ny, double eps_c = 0.0);

/// Sign changes of G(x_i, x_i) along the diagonal of a square grid.
int diagonal_sign_changes(const GreenGrid& grid);

/// Solution Y of (λ - ℓ) y = u with λB'ₐ[y] - Bₐ[y] = u1, -λB'_b[y] - B_b[y] = u2 and
/// the transmission jump at c. The function part is a pair of node trajectories.
HVector resolve(const Problem& problem, double lambda, const Expr& u_minus, const Expr& u_plus, double u1,
                double u2);

struct ResolventReport {
    double ode = 0.0;           // sup |(λ - ℓ)Y - u| by centered differences on the nodes
    double bc_left = 0.0;       // |λB'ₐ[Y] - Bₐ[Y] - u1|
    double bc_right = 0.0;      // |-λB'_b[Y] - B_b[Y] - u2|
    double transmission = 0.0;  // max-norm of (Y, Y')(c+) - jump_forward((Y, Y')(c-))
    double components = 0.0;    // mismatch of stored f1, f2 against B'ₐ[Y], -B'_b[Y]
};

ResolventReport verify_resolvent(const Problem& problem, double lambda, const HVector& y, const Expr& u_minus,
                                 const Expr& u_plus, double u1, double u2);

}  // namespace slgreen
