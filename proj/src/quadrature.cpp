#include "slgreen/quadrature.hpp"

#include "slgreen/error.hpp"

namespace slgreen {

double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size() - 1;
    if (f.size() < 3 || n % 2 != 0) throw Error("Simpson quadrature needs an even number of intervals");
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < n; i += 2) odd += f[i];
    for (std::size_t i = 2; i < n; i += 2) even += f[i];
    return h / 3.0 * (f[0] + f[n] + 4.0 * odd + 2.0 * even);
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 4) throw Error("cumulative quadrature needs at least 4 samples");
    std::vector<double> c(n, 0.0);
    c[1] = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    for (std::size_t i = 2; i < n; i += 2) c[i] = c[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    for (std::size_t i = 3; i < n; i += 2)
        c[i] = c[i - 3] + 3.0 * h / 8.0 * (f[i - 3] + 3.0 * f[i - 2] + 3.0 * f[i - 1] + f[i]);
    return c;
}

}  // namespace slgreen
