#include "slgreen/spectrum.hpp"

#include "slgreen/error.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <limits>
#include <thread>

namespace slgreen {

const char* to_string(EigenFlag f) { return f == EigenFlag::Simple ? "simple" : "suspect_multiple"; }

double brent_root(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi,
                  double tol, int max_iter) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double a = lo, b = hi, fa = f_lo, fb = f_hi;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw NumericalError("brent_root: interval does not bracket a sign change");
    double c = b, fc = fb, d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    return b;
}

namespace {

struct Sample {
    double omega = std::numeric_limits<double>::quiet_NaN();
    std::string error;
};

Sample sample_omega(const Problem& problem, double lambda) {
    Sample s;
    try {
        s.omega = omega(problem, lambda);
    } catch (const NumericalError& e) {
        s.error = e.what();
    }
    return s;
}

std::vector<Sample> sample_grid(const Problem& problem, const std::vector<double>& grid, unsigned threads) {
    std::vector<Sample> out(grid.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (grid.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(grid.size(), begin + chunk);
        if (begin >= end) break;
        jobs.push_back(std::async(std::launch::async, [&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) out[i] = sample_omega(problem, grid[i]);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

double central_derivative(const Problem& problem, double lambda) {
    const double h = 1e-6 * std::max(1.0, std::abs(lambda));
    return (omega(problem, lambda + h) - omega(problem, lambda - h)) / (2.0 * h);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

ScanResult scan(const Problem& problem, double lambda_lo, double lambda_hi, int grid_n, double tol,
                const ScanOptions& options) {
    if (!(lambda_lo < lambda_hi)) throw Error("scan: lambda_lo must be below lambda_hi");
    if (grid_n < 2) throw Error("scan: grid must have at least 2 cells");
    if (!(tol > 0.0)) throw Error("scan: tol must be positive");

    ScanResult result;
    result.grid.resize(grid_n + 1);
    for (int k = 0; k < grid_n; ++k) result.grid[k] = lambda_lo + (lambda_hi - lambda_lo) * k / grid_n;
    result.grid[grid_n] = lambda_hi;
    const auto samples = sample_grid(problem, result.grid, options.threads);

    result.omega.resize(samples.size());
    std::vector<double> magnitudes;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        result.omega[k] = samples[k].omega;
        if (!samples[k].error.empty()) {
            result.warnings.push_back("lambda = " + fmt(result.grid[k]) + " skipped: " + samples[k].error);
            continue;
        }
        magnitudes.push_back(std::abs(samples[k].omega));
        result.omega_sup = std::max(result.omega_sup, std::abs(samples[k].omega));
    }
    if (magnitudes.empty()) throw NumericalError("scan: integration failed at every grid point");
    std::nth_element(magnitudes.begin(), magnitudes.begin() + magnitudes.size() / 2, magnitudes.end());
    const double median = magnitudes[magnitudes.size() / 2];

    auto f = [&](double lambda) { return omega(problem, lambda); };
    auto finish = [&](double root, double lo, double hi, EigenFlag flag) {
        Eigenvalue ev;
        ev.lambda = root;
        ev.residual = std::abs(f(root));
        ev.bracket_lo = lo;
        ev.bracket_hi = hi;
        ev.flag = flag;
        try {
            ev.omega_derivative = central_derivative(problem, root);
        } catch (const NumericalError& e) {
            result.warnings.push_back("lambda = " + fmt(root) + ": derivative unavailable: " + e.what());
        }
        if (flag == EigenFlag::Simple && std::abs(ev.omega_derivative) <= 1e-6) ev.flag = EigenFlag::SuspectMultiple;
        result.eigenvalues.push_back(ev);
    };

    const auto& g = result.grid;
    const auto& w = result.omega;
    for (int k = 0; k <= grid_n; ++k) {
        if (!std::isfinite(w[k])) continue;
        if (w[k] == 0.0) {
            finish(g[k], g[k], g[k], EigenFlag::Simple);
            continue;
        }
        if (k < grid_n && std::isfinite(w[k + 1]) && w[k + 1] != 0.0 && (w[k] > 0.0) != (w[k + 1] > 0.0)) {
            try {
                const double root = brent_root(f, g[k], g[k + 1], w[k], w[k + 1], tol);
                finish(root, g[k], g[k + 1], EigenFlag::Simple);
            } catch (const NumericalError& e) {
                result.warnings.push_back("cell [" + fmt(g[k]) + ", " + fmt(g[k + 1]) + "] skipped: " + e.what());
            }
            continue;
        }
        // A dip of |ω| toward zero without a sign change hints at an even-order zero.
        if (k > 0 && k < grid_n && std::isfinite(w[k - 1]) && std::isfinite(w[k + 1]) &&
            std::abs(w[k]) < std::abs(w[k - 1]) && std::abs(w[k]) < std::abs(w[k + 1]) &&
            (w[k - 1] > 0.0) == (w[k] > 0.0) && (w[k + 1] > 0.0) == (w[k] > 0.0) &&
            std::abs(w[k]) < 1e-3 * median) {
            try {
                const auto [xmin, fmin] = boost::math::tools::brent_find_minima(
                    [&](double l) { return std::abs(f(l)); }, g[k - 1], g[k + 1], 52);
                result.warnings.push_back("possible multiple zero near lambda = " + fmt(xmin) +
                                          " (|ω| = " + fmt(fmin) + ", no sign change)");
                if (fmin <= 1e-7 * std::max(1.0, result.omega_sup))
                    finish(xmin, g[k - 1], g[k + 1], EigenFlag::SuspectMultiple);
            } catch (const NumericalError& e) {
                result.warnings.push_back("dip near lambda = " + fmt(g[k]) + " not refined: " + e.what());
            }
        }
    }

    std::sort(result.eigenvalues.begin(), result.eigenvalues.end(),
              [](const Eigenvalue& x, const Eigenvalue& y) { return x.lambda < y.lambda; });
    std::vector<Eigenvalue> unique;
    for (const auto& ev : result.eigenvalues) {
        if (!unique.empty() && ev.lambda - unique.back().lambda <= 10.0 * tol) {
            if (ev.residual < unique.back().residual) unique.back() = ev;
            continue;
        }
        unique.push_back(ev);
    }
    result.eigenvalues = std::move(unique);
    return result;
}

HVector Eigenpair::as_hvector() const { return HVector{PathPair{left, right}, f1, f2}; }

namespace {

void scale_path(SolutionPath& p, double s) {
    for (auto& n : p.nodes) {
        n.y *= s;
        n.yp *= s;
        n.ypp *= s;
    }
}

// Value at the first local extremum met walking from a; the left end counts when y'(a) = 0.
double first_extremum_value(const SolutionPath& left, const SolutionPath& right) {
    std::vector<const PathNode*> all;
    all.reserve(left.nodes.size() + right.nodes.size());
    for (const auto& n : left.nodes) all.push_back(&n);
    for (const auto& n : right.nodes) all.push_back(&n);
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
        if (all[i]->yp == 0.0) return all[i]->y;
        if ((all[i]->yp > 0.0) != (all[i + 1]->yp > 0.0))
            return std::abs(all[i]->y) >= std::abs(all[i + 1]->y) ? all[i]->y : all[i + 1]->y;
    }
    const PathNode* best = all.front();
    for (const auto* n : all)
        if (std::abs(n->y) > std::abs(best->y)) best = n;
    return best->y;
}

}  // namespace

Eigenpair eigenpair(const Problem& problem, const Eigenvalue& ev) {
    const ProblemConfig& cfg = problem.config();
    const FundamentalSystem fs = fundamental_system(problem, ev.lambda);
    Eigenpair ep;
    ep.eigenvalue = ev;
    ep.left = fs.phi_minus;
    ep.right = fs.phi_plus;

    double phi_star = 0.0, psi_star = 0.0, sup_psi = 0.0;
    auto visit = [&](const SolutionPath& phi, const SolutionPath& psi) {
        for (std::size_t i = 0; i < phi.nodes.size(); ++i) {
            if (std::abs(phi.nodes[i].y) > std::abs(phi_star)) {
                phi_star = phi.nodes[i].y;
                psi_star = psi.nodes[i].y;
            }
            sup_psi = std::max(sup_psi, std::abs(psi.nodes[i].y));
        }
    };
    visit(fs.phi_minus, fs.psi_minus);
    visit(fs.phi_plus, fs.psi_plus);
    if (std::abs(phi_star) < 1e-12 * std::max(1.0, sup_psi))
        throw DegenerateEigenfunctionError("eigenfunction vanishes at lambda = " + fmt(ev.lambda));
    ep.dependency_k = psi_star / phi_star;
    double dep = 0.0;
    auto residual = [&](const SolutionPath& phi, const SolutionPath& psi) {
        for (std::size_t i = 0; i < phi.nodes.size(); ++i)
            dep = std::max(dep, std::abs(psi.nodes[i].y - ep.dependency_k * phi.nodes[i].y));
    };
    residual(fs.phi_minus, fs.psi_minus);
    residual(fs.phi_plus, fs.psi_plus);
    ep.dependency_residual = sup_psi > 0.0 ? dep / sup_psi : dep;

    {
        const State b = fs.phi_plus.back();
        const double lam = ev.lambda;
        const auto& r = cfg.right;
        double sup_y = 0.0, sup_yp = 0.0;
        for (const PathNode& n : fs.phi_plus.nodes) {
            sup_y = std::max(sup_y, std::abs(n.y));
            sup_yp = std::max(sup_yp, std::abs(n.yp));
        }
        const double value = r.c0 * b.y - r.c1 * b.yp + lam * (r.c0p * b.y - r.c1p * b.yp);
        const double scale = (std::abs(r.c0) + std::abs(lam * r.c0p)) * sup_y +
                             (std::abs(r.c1) + std::abs(lam * r.c1p)) * sup_yp;
        ep.right_bc_residual = scale > 0.0 ? std::abs(value) / scale : std::abs(value);
    }

    HVector raw = make_hvector(problem, PathPair{ep.left, ep.right});
    const double norm_sq = inner_product_H(problem, raw, raw);
    if (!(norm_sq != 0.0) || !std::isfinite(norm_sq))
        throw DegenerateEigenfunctionError("eigenfunction has zero H-norm at lambda = " + fmt(ev.lambda));
    ep.indefinite = norm_sq < 0.0;
    double s = 1.0 / std::sqrt(std::abs(norm_sq));
    if (first_extremum_value(ep.left, ep.right) < 0.0) s = -s;
    scale_path(ep.left, s);
    scale_path(ep.right, s);
    if (raw.f1) ep.f1 = *raw.f1 * s;
    if (raw.f2) ep.f2 = *raw.f2 * s;
    ep.samples = sample(problem, ep.as_hvector());
    ep.h_norm = inner_product(problem, ep.samples, ep.samples);
    return ep;
}

std::vector<Eigenpair> eigenpairs(const Problem& problem, std::span<const Eigenvalue> evs) {
    std::vector<Eigenpair> out;
    out.reserve(evs.size());
    for (const auto& ev : evs) out.push_back(eigenpair(problem, ev));
    return out;
}

GramReport orthogonality_check(const Problem& problem, std::span<const Eigenpair> pairs) {
    GramReport r;
    const std::size_t n = pairs.size();
    r.gram.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double g = inner_product(problem, pairs[i].samples, pairs[j].samples);
            r.gram[i][j] = r.gram[j][i] = g;
            if (i == j) r.max_diagonal_deviation = std::max(r.max_diagonal_deviation, std::abs(g - 1.0));
            else r.max_off_diagonal = std::max(r.max_off_diagonal, std::abs(g));
        }
    }
    return r;
}

}  // namespace slgreen
