#include "slgreen/expansion.hpp"

#include "slgreen/error.hpp"

#include <algorithm>
#include <cmath>

namespace slgreen {

namespace {

void require_count(std::span<const Eigenpair> pairs, std::size_t n) {
    if (n > pairs.size())
        throw Error("requested " + std::to_string(n) + " terms but only " + std::to_string(pairs.size()) +
                    " eigenpairs are available");
}

}  // namespace

std::vector<double> coefficients(const Problem& problem, std::span<const Eigenpair> pairs, const HVector& f,
                                 std::size_t n) {
    require_count(pairs, n);
    const HSamples fs = sample(problem, f);
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = inner_product(problem, fs, pairs[k].samples);
    return c;
}

ParsevalReport parseval_report(const Problem& problem, std::span<const Eigenpair> pairs, const HVector& f,
                               std::size_t n) {
    ParsevalReport r;
    const HSamples fs = sample(problem, f);
    r.norm_sq = inner_product(problem, fs, fs);
    r.coefficients = coefficients(problem, pairs, f, n);
    double sum = 0.0;
    for (double c : r.coefficients) {
        sum += c * c;
        r.partial_sums.push_back(sum);
    }
    r.deficit = r.norm_sq != 0.0 ? 1.0 - sum / r.norm_sq : 0.0;
    const auto& cfg = problem.config();
    r.indefinite = cfg.theta1() < 0.0 || cfg.theta2() < 0.0;
    if (r.indefinite) r.warnings.push_back("indefinite inner product (θ < 0): energy ratios are not norms");
    return r;
}

std::vector<std::size_t> log_spaced_terms(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t decade = 1; decade <= n; decade *= 10) {
        for (std::size_t m : {1, 2, 3, 5}) {
            if (decade * m <= n) out.push_back(decade * m);
        }
    }
    if (out.empty() || out.back() != n) out.push_back(n);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ExpansionErrorRow> expansion_error(const Problem& problem, std::span<const Eigenpair> pairs,
                                               const HVector& f, std::size_t n, int grid_m,
                                               std::span<const std::size_t> terms) {
    require_count(pairs, n);
    if (grid_m < 2) throw Error("expansion_error: grid_m must be at least 2");
    const std::vector<double> c = coefficients(problem, pairs, f, n);
    std::vector<std::size_t> ks(terms.begin(), terms.end());
    if (ks.empty()) ks = log_spaced_terms(n);

    struct Point {
        Side side;
        double x;
        double value;
        std::vector<double> basis;
    };
    std::vector<Point> pts;
    for (Side side : {Side::Left, Side::Right}) {
        const double lo = problem.lo(side);
        const double hi = problem.hi(side);
        for (int i = 0; i <= grid_m; ++i) {
            const double x = lo + (hi - lo) * i / grid_m;
            Point p{side, x, f.f.eval(side, x).y, {}};
            p.basis.reserve(n);
            for (std::size_t k = 0; k < n; ++k)
                p.basis.push_back(eval_path(side == Side::Left ? pairs[k].left : pairs[k].right, x).y);
            pts.push_back(std::move(p));
        }
    }

    std::vector<ExpansionErrorRow> rows;
    for (std::size_t k : ks) {
        if (k == 0 || k > n) continue;
        double worst = 0.0;
        for (const auto& p : pts) {
            double s = 0.0;
            for (std::size_t j = 0; j < k; ++j) s += c[j] * p.basis[j];
            worst = std::max(worst, std::abs(p.value - s));
        }
        rows.push_back({k, worst});
    }
    return rows;
}

}  // namespace slgreen
