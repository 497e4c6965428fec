#pragma once

#include "slgreen/spectrum.hpp"

#include <span>
#include <vector>

namespace slgreen {

/// cₙ = [F, Ψₙ]_H for the first n normalized eigenpairs.
std::vector<double> coefficients(const Problem& problem, std::span<const Eigenpair> pairs, const HVector& f,
                                 std::size_t n);

struct ParsevalReport {
    double norm_sq = 0.0;               // [F, F]_H
    std::vector<double> coefficients;
    std::vector<double> partial_sums;   // Σ_{k<=n} cₖ²
    double deficit = 0.0;               // 1 - partial_sums.back() / norm_sq
    bool indefinite = false;            // some θ < 0: ratios carry no norm meaning
    std::vector<std::string> warnings;
};

ParsevalReport parseval_report(const Problem& problem, std::span<const Eigenpair> pairs, const HVector& f,
                               std::size_t n);

struct ExpansionErrorRow {
    std::size_t terms = 0;
    double sup_error = 0.0;
};

/// Log-spaced term counts 1, 2, 3, 5, 10, 20, ... up to n (n itself always included).
std::vector<std::size_t> log_spaced_terms(std::size_t n);

/// Sup-norm of f - Σ_{k<=terms} cₖ ψₖ over grid_m points per side (endpoints included, c excluded).
std::vector<ExpansionErrorRow> expansion_error(const Problem& problem, std::span<const Eigenpair> pairs,
                                               const HVector& f, std::size_t n, int grid_m,
                                               std::span<const std::size_t> terms = {});

}  // namespace slgreen
