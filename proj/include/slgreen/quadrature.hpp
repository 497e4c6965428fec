#pragma once

#include <span>
#include <vector>

namespace slgreen {

/// Composite Simpson over uniformly spaced samples; the interval count must be even.
double simpson(std::span<const double> f, double h);

/// Running integrals C[i] = ∫ from x0 to xi, 4th order at every node: Simpson on
/// even nodes, Simpson plus a 3/8 panel on odd nodes, a 4-point rule at node 1.
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

}  // namespace slgreen
