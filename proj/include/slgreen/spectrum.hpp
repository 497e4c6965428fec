#pragma once

#include "slgreen/basis.hpp"
#include "slgreen/hspace.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace slgreen {

enum class EigenFlag { Simple, SuspectMultiple };
const char* to_string(EigenFlag f);

struct Eigenvalue {
    double lambda = 0.0;
    double residual = 0.0;          // |ω(λ)|
    double omega_derivative = 0.0;  // central difference, h = 1e-6 max(1, |λ|)
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    EigenFlag flag = EigenFlag::Simple;
};

struct ScanOptions {
    unsigned threads = 0;  // 0: hardware concurrency
};

struct ScanResult {
    std::vector<Eigenvalue> eigenvalues;
    std::vector<std::string> warnings;
    std::vector<double> grid;   // sampled λ
    std::vector<double> omega;  // ω at grid points (NaN where integration failed)
    double omega_sup = 0.0;     // max |ω| over valid grid points
};

/// Brent's method on a sign-change bracket; stops when the bracket is narrower than tol.
double brent_root(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi,
                  double tol, int max_iter = 200);

ScanResult scan(const Problem& problem, double lambda_lo, double lambda_hi, int grid_n, double tol,
                const ScanOptions& options = {});

struct Eigenpair {
    Eigenvalue eigenvalue;
    SolutionPath left;   // normalized φ⁻ branch
    SolutionPath right;  // normalized φ⁺ branch
    std::optional<double> f1;  // B'ₐ[f]
    std::optional<double> f2;  // -B'_b[f]
    double h_norm = 0.0;       // [F, F]_H after normalization: 1, or -1 for an indefinite form
    bool indefinite = false;
    double dependency_k = 0.0;
    double dependency_residual = 0.0;  // sup|ψ - kφ| / sup|ψ| over nodes
    double right_bc_residual = 0.0;    // relative residual of the right boundary condition
    HSamples samples;

    HVector as_hvector() const;
};

Eigenpair eigenpair(const Problem& problem, const Eigenvalue& ev);
std::vector<Eigenpair> eigenpairs(const Problem& problem, std::span<const Eigenvalue> evs);

struct GramReport {
    std::vector<std::vector<double>> gram;
    double max_off_diagonal = 0.0;
    double max_diagonal_deviation = 0.0;
};

GramReport orthogonality_check(const Problem& problem, std::span<const Eigenpair> pairs);

}  // namespace slgreen
