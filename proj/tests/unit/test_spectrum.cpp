#include "slgreen/config_io.hpp"
#include "slgreen/error.hpp"
#include "slgreen/spectrum.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace slgreen;

namespace {

double omega_p(double l) {
    const double k = std::sqrt(l);
    const double phi0 = -l * std::cos(k) + std::sin(k) / k;
    const double dphi0 = l * k * std::sin(k) + std::cos(k);
    const double psi0 = -std::cos(k) - (l / k) * std::sin(k);
    const double dpsi0 = -k * std::sin(k) + l * std::cos(k);
    return phi0 * dpsi0 - 0.5 * dphi0 * psi0;
}

// Roots of the closed form by dense bracketing and bisection.
std::vector<double> roots_p(double lo, double hi) {
    std::vector<double> out;
    const int n = 20000;
    double a = lo, fa = omega_p(lo);
    for (int i = 1; i <= n; ++i) {
        const double b = lo + (hi - lo) * i / n, fb = omega_p(b);
        if ((fa > 0) != (fb > 0)) {
            double x0 = a, x1 = b, f0 = fa;
            for (int it = 0; it < 200 && x1 - x0 > 1e-14 * std::max(1.0, x1); ++it) {
                const double m = 0.5 * (x0 + x1), fm = omega_p(m);
                if ((fm > 0) == (f0 > 0)) {
                    x0 = m;
                    f0 = fm;
                } else {
                    x1 = m;
                }
            }
            out.push_back(0.5 * (x0 + x1));
        }
        a = b;
        fa = fb;
    }
    return out;
}

}  // namespace

TEST_CASE("Brent root") {
    auto f = [](double x) { return std::cos(x) - x; };
    const double r = brent_root(f, 0.0, 1.0, f(0.0), f(1.0), 1e-14);
    CHECK(std::abs(r - 0.7390851332151607) <= 1e-13);
    CHECK_THROWS(brent_root(f, 0.0, 0.5, f(0.0), f(0.5), 1e-12));
}

TEST_CASE("classical Dirichlet spectrum") {
    const Problem d(builtin_config("D"));
    const ScanResult r = scan(d, 0.5, 30.0, 600, 1e-10);
    REQUIRE(r.eigenvalues.size() == 5);
    for (int n = 1; n <= 5; ++n) {
        const Eigenvalue& e = r.eigenvalues[n - 1];
        CHECK(std::abs(e.lambda - n * n) <= 1e-7 * n * n);
        CHECK(e.flag == EigenFlag::Simple);
        CHECK(e.residual <= 1e-7 * std::max(1.0, r.omega_sup));
        CHECK(e.bracket_lo <= e.lambda);
        CHECK(e.lambda <= e.bracket_hi);
        CHECK(std::abs(e.omega_derivative) > 1e-6);
    }
    CHECK(r.grid.size() == 601);
    CHECK(r.warnings.empty());

    ProblemConfig moved = builtin_config("D");
    moved.c = 1.0;
    const ScanResult m = scan(Problem(moved), 0.5, 30.0, 600, 1e-10);
    REQUIRE(m.eigenvalues.size() == 5);
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(m.eigenvalues[n - 1].lambda - n * n) <= 1e-7 * n * n);
}

TEST_CASE("closed-form roots of P") {
    const Problem p(builtin_config("P"));
    const ScanResult r = scan(p, 0.1, 40.0, 1600, 1e-10);
    const auto oracle = roots_p(0.1, 40.0);
    REQUIRE(r.eigenvalues.size() == oracle.size());
    REQUIRE(oracle.size() >= 3);
    for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(std::abs(r.eigenvalues[i].lambda - oracle[i]) <= 1e-6);
}

TEST_CASE("scan invariants") {
    const Problem e(builtin_config("E"));
    const ScanResult a = scan(e, -20.0, 200.0, 4400, 1e-10);
    const ScanResult b = scan(e, -20.0, 200.0, 4400, 5e-11);
    REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
    REQUIRE(a.eigenvalues.size() >= 5);
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
        CHECK(std::abs(a.eigenvalues[i].lambda - b.eigenvalues[i].lambda) <= 1e-9);
        if (i > 0) CHECK(a.eigenvalues[i].lambda > a.eigenvalues[i - 1].lambda);
        CHECK(a.eigenvalues[i].residual <= 1e-7 * std::max(1.0, a.omega_sup));
        CHECK(std::abs(a.eigenvalues[i].omega_derivative) > 1e-6);
    }
    const ScanResult fine = scan(e, -20.0, 200.0, 44000, 1e-10);
    CHECK(fine.eigenvalues.size() == a.eigenvalues.size());

    const ScanResult single = scan(e, -20.0, 200.0, 4400, 1e-10, ScanOptions{1});
    REQUIRE(single.eigenvalues.size() == a.eigenvalues.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
        CHECK(single.eigenvalues[i].lambda == a.eigenvalues[i].lambda);

    CHECK_THROWS(scan(e, 1.0, 0.0, 10, 1e-10));
    CHECK_THROWS(scan(e, 0.0, 1.0, 1, 1e-10));
    CHECK_THROWS(scan(e, 0.0, 1.0, 10, 0.0));
}

TEST_CASE("divergent grid points are skipped with a warning") {
    ProblemConfig cfg = builtin_config("D");
    cfg.integrator.steps_per_side = 40;
    const ScanResult r = scan(Problem(cfg), -1e7, 30.0, 2000, 1e-10);
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("eigenpairs of the classical problem") {
    const Problem d(builtin_config("D"));
    const ScanResult r = scan(d, 0.5, 40.0, 800, 1e-10);
    REQUIRE(r.eigenvalues.size() >= 6);
    const std::vector<Eigenpair> pairs = eigenpairs(d, r.eigenvalues);

    const Eigenpair& first = pairs[0];
    CHECK(first.h_norm == Catch::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(first.indefinite);
    CHECK_FALSE(first.f1.has_value());
    const double amp = std::sqrt(2.0 / std::numbers::pi);
    for (const SolutionPath* side : {&first.left, &first.right})
        for (std::size_t i = 0; i < side->nodes.size(); i += 50)
            CHECK(std::abs(side->nodes[i].y - amp * std::sin(side->nodes[i].x)) <= 1e-8);

    CHECK(pairs[1].dependency_residual <= 1e-6);
    for (const Eigenpair& p : pairs) {
        CHECK(p.dependency_residual <= 1e-4);
        CHECK(p.right_bc_residual <= 1e-6);
        // first lobe positive
        double prev = 0.0;
        for (const PathNode& n : p.left.nodes) {
            if (std::abs(n.y) < std::abs(prev)) {
                CHECK(prev > 0.0);
                break;
            }
            prev = n.y;
        }
    }

    const GramReport g = orthogonality_check(d, std::span<const Eigenpair>(pairs.data(), 6));
    CHECK(g.max_off_diagonal <= 1e-6);
    CHECK(g.max_diagonal_deviation <= 1e-10);
    const GramReport one = orthogonality_check(d, std::span<const Eigenpair>(pairs.data(), 1));
    REQUIRE(one.gram.size() == 1);
    CHECK(one.gram[0][0] == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eigenparameter-dependent configuration E") {
    const Problem e(builtin_config("E"));
    const ScanResult r = scan(e, -20.0, 330.0, 7000, 1e-10);
    REQUIRE(r.eigenvalues.size() >= 6);
    const std::vector<Eigenpair> pairs = eigenpairs(e, std::span<const Eigenvalue>(r.eigenvalues.data(), 6));
    for (const Eigenpair& p : pairs) {
        REQUIRE(p.f1.has_value());
        REQUIRE(p.f2.has_value());
        CHECK(p.dependency_residual <= 1e-4);
        CHECK(std::abs(p.eigenvalue.omega_derivative) > 1e-6);
        CHECK(p.h_norm == Catch::Approx(1.0).epsilon(1e-10));
    }
    const GramReport g = orthogonality_check(e, pairs);
    CHECK(g.max_off_diagonal <= 1e-5);

    // The printed weights do not make this configuration's eigenfunctions orthogonal.
    const Problem printed(builtin_config("E"), Weighting::AsPrinted);
    const std::vector<Eigenpair> pp = eigenpairs(printed, std::span<const Eigenvalue>(r.eigenvalues.data(), 6));
    CHECK(orthogonality_check(printed, pp).max_off_diagonal > 1e-2);
}

TEST_CASE("indefinite configuration P") {
    const Problem p(builtin_config("P"));
    const ScanResult r = scan(p, -40.0, 40.0, 3200, 1e-10);
    const std::vector<Eigenpair> pairs = eigenpairs(p, r.eigenvalues);
    REQUIRE(pairs.size() == 4);
    int negative = 0;
    for (const Eigenpair& e : pairs) {
        negative += e.indefinite;
        CHECK(e.indefinite == (e.h_norm < 0.0));
        CHECK(std::abs(std::abs(e.h_norm) - 1.0) <= 1e-10);
        CHECK(e.dependency_residual <= 1e-4);
    }
    CHECK(negative == 1);
    CHECK(pairs[0].indefinite);
}

TEST_CASE("quadrature consistency of eigenfunction norms") {
    ProblemConfig coarse = builtin_config("E");
    ProblemConfig fine = coarse;
    fine.integrator.steps_per_side = 4000;
    const Problem pc(coarse), pf(fine);
    const ScanResult rc = scan(pc, 0.0, 30.0, 600, 1e-11);
    const ScanResult rf = scan(pf, 0.0, 30.0, 600, 1e-11);
    REQUIRE(rc.eigenvalues.size() == rf.eigenvalues.size());
    for (std::size_t i = 0; i < rc.eigenvalues.size(); ++i) {
        const Eigenpair a = eigenpair(pc, rc.eigenvalues[i]);
        const Eigenpair b = eigenpair(pf, rf.eigenvalues[i]);
        const double na = inner_product_H1(pc, a.samples, a.samples);
        const double nb = inner_product_H1(pf, b.samples, b.samples);
        CHECK(std::abs(na - nb) <= 1e-6 * std::abs(nb));
    }
}
