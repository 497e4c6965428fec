#pragma once

#include "slgreen/greens.hpp"

#include <ostream>
#include <string>

namespace slgreen {

/// Heatmap of a Green grid: blue-white-red over [-M, M] with M = max|G|, axis labels,
/// the title, and interface lines at x = c and y = c.
void write_svg_heatmap(std::ostream& os, const GreenGrid& grid, double a, double c, double b,
                       const std::string& title);

}  // namespace slgreen
