#include "slgreen/cli.hpp"
#include "slgreen/config_io.hpp"
#include "slgreen/error.hpp"
#include "slgreen/expansion.hpp"
#include "slgreen/greens.hpp"
#include "slgreen/spectrum.hpp"
#include "slgreen/structural.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace slgreen;

namespace {

const double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [FAILED]");
    }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

double omega_p(double l) {
    const double k = std::sqrt(l);
    const double phi0 = -l * std::cos(k) + std::sin(k) / k;
    const double dphi0 = l * k * std::sin(k) + std::cos(k);
    const double psi0 = -std::cos(k) - (l / k) * std::sin(k);
    const double dpsi0 = -k * std::sin(k) + l * std::cos(k);
    return phi0 * dpsi0 - 0.5 * dphi0 * psi0;
}

double distance_to_root_p(double l) {
    double best = std::numeric_limits<double>::infinity();
    const double h = 1e-4;
    for (double x = std::max(1e-3, l - 0.01); x < l + 0.01; x += h)
        if ((omega_p(x) > 0) != (omega_p(x + h) > 0)) best = std::min(best, std::abs(x + h / 2 - l));
    return best;
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Problem d(builtin_config("D"));
    const ScanResult r = scan(d, 0.5, 30.0, 600, 1e-10);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double worst = 0.0;
    const bool count = r.eigenvalues.size() == 5;
    for (std::size_t n = 1; count && n <= 5; ++n)
        worst = std::max(worst, std::abs(r.eigenvalues[n - 1].lambda - double(n * n)) / double(n * n));
    o.require(count, "5 eigenvalues in [0.5, 30]");
    o.require(count && worst <= 1e-7, "max rel err " + sci(worst) + " <= 1e-7");
    o.require(secs <= 10.0, "runtime " + sci(secs) + " s <= 10 s");
    return o;
}

Outcome criterion2() {
    Outcome o;
    const Problem p(builtin_config("P"));
    double worst_rel = 0.0, worst_abs = 0.0;
    for (double l : {1.0, 2.0, 5.0, 10.0, 15.0}) {
        const double num = omega(p, l), ref = omega_p(l);
        if (distance_to_root_p(l) < 1e-3) worst_abs = std::max(worst_abs, std::abs(num - ref));
        else worst_rel = std::max(worst_rel, std::abs(num - ref) / std::abs(ref));
    }
    o.require(worst_rel <= 1e-6, "max rel err " + sci(worst_rel) + " <= 1e-6");
    o.require(worst_abs <= 1e-6, "near-root abs err " + sci(worst_abs) + " <= 1e-6");
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double plucker = 0.0, roundtrip = 0.0;
    for (int k = 0; k < 1000; ++k) {
        TransmissionSpec t;
        for (auto& row : t.beta)
            for (double& v : row) v = u(rng);
        plucker = std::max(plucker, plucker_defect_ulps(t));
        roundtrip = std::max(roundtrip, jump_roundtrip_ulps(minors(t), {u(rng), u(rng)}));
    }
    o.require(plucker <= 8.0, "Plücker " + sci(plucker) + " ulp <= 8");
    o.require(roundtrip <= 8.0, "jump roundtrip " + sci(roundtrip) + " ulp <= 8");

    double wr = 0.0, rel = 0.0;
    for (const char* name : {"D", "P", "E"}) {
        const Problem pr(builtin_config(name));
        std::uniform_real_distribution<double> lam(-10.0, 60.0);
        for (int k = 0; k < 50; ++k) {
            const FundamentalSystem fs = fundamental_system(pr, lam(rng));
            const Minors& m = pr.minors();
            rel = std::max(rel, std::abs(m.d34 * fs.omega_minus - m.d12 * fs.omega_plus) /
                                    std::max(1.0, std::abs(fs.omega)));
            if (k % 10) continue;
            for (auto [f, g] : {std::pair{&fs.phi_minus, &fs.psi_minus}, std::pair{&fs.phi_plus, &fs.psi_plus}}) {
                double lo = 1e300, hi = -1e300, big = 0.0;
                for (std::size_t i = 0; i < f->nodes.size(); ++i) {
                    const double w = wronskian_at_node(*f, *g, i);
                    lo = std::min(lo, w);
                    hi = std::max(hi, w);
                    big = std::max(big, std::abs(w));
                }
                wr = std::max(wr, (hi - lo) / std::max(1.0, big));
            }
        }
    }
    o.require(wr <= 1e-8, "Wronskian spread " + sci(wr) + " <= 1e-8");
    o.require(rel <= 1e-7, "Δ34ω⁻ vs Δ12ω⁺ " + sci(rel) + " <= 1e-7");
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> lam(-30.0, 100.0);
    double worst = 0.0;
    for (const char* name : {"D", "P", "E"}) {
        const Problem pr(builtin_config(name));
        const ProblemConfig& cfg = pr.config();
        for (int k = 0; k < 20; ++k) {
            const double l = lam(rng);
            const FundamentalSystem fs = fundamental_system(pr, l);
            const State a = fs.phi_minus.front(), b = fs.psi_plus.back();
            const double left = cfg.left.c0 * a.y - cfg.left.c1 * a.yp - l * (cfg.left.c0p * a.y - cfg.left.c1p * a.yp);
            const double right =
                cfg.right.c0 * b.y - cfg.right.c1 * b.yp + l * (cfg.right.c0p * b.y - cfg.right.c1p * b.yp);
            worst = std::max(worst, std::max(std::abs(left), std::abs(right)) / std::pow(1 + std::abs(l), 2));
        }
    }
    o.require(worst <= 1e-12, "scaled residual " + sci(worst) + " <= 1e-12");
    return o;
}

Outcome criterion5() {
    Outcome o;
    double sym = 0.0;
    for (auto [name, l] : {std::pair{"D", 0.25}, std::pair{"P", 3.0}, std::pair{"E", 5.0}}) {
        const GreenGrid g = green_grid(Problem(builtin_config(name)), l, 64, 64);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.xs.size(); ++i)
            for (std::size_t j = 0; j < g.ys.size(); ++j) worst = std::max(worst, std::abs(g.at(i, j) - g.at(j, i)));
        sym = std::max(sym, worst / g.max_abs());
    }
    o.require(sym <= 1e-7, "65x65 symmetry " + sci(sym) + " <= 1e-7 max|G|");

    const Problem d(builtin_config("D"));
    const GreenGrid g = green_grid(d, 0.25, 64, 64);
    const double center = g.at(32, 32);
    o.require(g.xs[32] == pi / 2 && std::abs(center + 1.0) <= 1e-6,
              "G(π/2, π/2; 0.25) = " + std::to_string(center));

    bool monotone = true;
    for (double sign : {-1.0, 1.0}) {
        double prev = 0.0;
        for (int k = 1; k <= 4; ++k) {
            const double v = std::abs(green_eval(fundamental_system(d, 1.0 + sign * std::pow(10.0, -k)), 1.0, 2.0));
            monotone = monotone && v > prev;
            prev = v;
        }
    }
    o.require(monotone, "|G| grows monotonically on λ₁ ± 10^-k, k = 1..4");
    return o;
}

Outcome criterion6() {
    Outcome o;
    const Problem p(builtin_config("P"));
    const double l = 2.0;
    const Expr um = Expr::parse("2*(cos(x) + x) - cos(x)");
    const Expr up = Expr::parse("2*(cos(x) + 0.5*x) - cos(x)");
    const BoundaryValues bv = boundary_functionals(p.config(), std::cos(1.0) - 1.0, std::sin(1.0) + 1.0,
                                                   std::cos(1.0) + 0.5, 0.5 - std::sin(1.0));
    const double u1 = l * bv.Bpa - bv.Ba, u2 = -l * bv.Bpb - bv.Bb;
    const HVector y = resolve(p, l, um, up, u1, u2);
    double err = 0.0;
    for (const PathNode& n : y.f.paths()->left.nodes) err = std::max(err, std::abs(n.y - std::cos(n.x) - n.x));
    for (const PathNode& n : y.f.paths()->right.nodes) err = std::max(err, std::abs(n.y - std::cos(n.x) - 0.5 * n.x));
    o.require(err <= 1e-5, "manufactured sup err " + sci(err) + " <= 1e-5");

    double res = 0.0;
    {
        const ResolventReport r = verify_resolvent(p, l, y, um, up, u1, u2);
        res = std::max({r.ode, r.bc_left, r.bc_right, r.transmission});
        const Problem e(builtin_config("E"));
        const Expr a = Expr::parse("sin(3*x) + 1"), b = Expr::parse("x^2");
        const HVector ye = resolve(e, 7.5, a, b, 0.5, -2.0);
        const ResolventReport re = verify_resolvent(e, 7.5, ye, a, b, 0.5, -2.0);
        res = std::max({res, re.ode, re.bc_left, re.bc_right, re.transmission});
    }
    o.require(res <= 1e-4, "resolvent residuals " + sci(res) + " <= 1e-4");

    const Problem d(builtin_config("D"));
    double eig = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const std::string s = "sin(" + std::to_string(n) + "*x)";
        const Expr u = Expr::parse(s);
        const HVector yd = resolve(d, 0.25, u, u, 0, 0);
        const double scale = 1.0 / std::abs(0.25 - n * n);
        double worst = 0.0;
        for (const SolutionPath* side : {&yd.f.paths()->left, &yd.f.paths()->right})
            for (const PathNode& nd : side->nodes)
                worst = std::max(worst, std::abs(nd.y - std::sin(n * nd.x) / (0.25 - n * n)));
        eig = std::max(eig, worst / scale);
    }
    o.require(eig <= 1e-5, "eigen-direction rel err " + sci(eig) + " <= 1e-5");
    return o;
}

Outcome criterion7() {
    Outcome o;
    for (auto [name, lo, hi, grid] : {std::tuple{"D", 0.5, 40.0, 800}, std::tuple{"E", -20.0, 330.0, 7000}}) {
        const Problem pr(builtin_config(name));
        const ScanResult r = scan(pr, lo, hi, grid, 1e-10);
        if (r.eigenvalues.size() < 6) {
            o.require(false, std::string(name) + ": fewer than 6 eigenvalues");
            continue;
        }
        const auto pairs = eigenpairs(pr, r.eigenvalues);
        const GramReport g = orthogonality_check(pr, std::span<const Eigenpair>(pairs.data(), 6));
        double dep = 0.0, dmin = std::numeric_limits<double>::infinity();
        for (const Eigenpair& p : pairs) {
            dep = std::max(dep, p.dependency_residual);
            dmin = std::min(dmin, std::abs(p.eigenvalue.omega_derivative));
        }
        o.require(g.max_off_diagonal <= 1e-5, std::string(name) + " Gram off-diag " + sci(g.max_off_diagonal));
        o.require(dep <= 1e-4, std::string(name) + " dependency " + sci(dep));
        if (std::string(name) == "E") o.require(dmin > 1e-6, "E min |ω'| " + sci(dmin) + " > 1e-6");
    }
    return o;
}

Outcome criterion8() {
    Outcome o;
    const Problem d(builtin_config("D"));
    const ScanResult r = scan(d, 0.5, 1700.0, 3400, 1e-11);
    if (r.eigenvalues.size() < 40) {
        o.require(false, "fewer than 40 eigenvalues below 1700");
        return o;
    }
    const auto pairs = eigenpairs(d, std::span<const Eigenvalue>(r.eigenvalues.data(), 40));
    const Expr f = Expr::parse("x*(pi - x)");
    const HVector F = make_hvector(d, ExprPair{f, f});
    const ParsevalReport pr = parseval_report(d, pairs, F, 40);
    o.require(pr.deficit <= 2e-2, "deficit " + sci(pr.deficit) + " <= 2e-2");
    const auto table = expansion_error(d, pairs, F, 40, 200, std::vector<std::size_t>{10, 40});
    o.require(table.size() == 2 && table[1].sup_error < table[0].sup_error,
              "e40 " + sci(table[1].sup_error) + " < e10 " + sci(table[0].sup_error));
    double coef = 0.0;
    for (int n = 1; n <= 40; ++n) {
        const double ref = n % 2 ? std::sqrt(pi / 2) * 8.0 / (pi * n * n * n) : 0.0;
        coef = std::max(coef, std::abs(pr.coefficients[n - 1] - ref));
    }
    o.require(coef <= 1e-5, "coefficient err " + sci(coef) + " <= 1e-5");
    return o;
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "slgreen");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome criterion9(const std::string& dir) {
    Outcome o;
    int counts[2] = {0, 0};
    int k = 0;
    for (const char* param : {"3", "15"}) {
        const std::string svg = dir + "/green_p" + param + ".svg";
        const std::string js = dir + "/green_p" + param + ".json";
        const int c1 = run_cli({"green", "--config", "builtin:P", "--lambda", param, "--format", "svg", "--out", svg});
        const int c2 = run_cli({"green", "--config", "builtin:P", "--lambda", param, "--format", "json", "--out", js});
        const std::string s = slurp(svg);
        std::size_t rects = 0;
        for (std::size_t pos = s.find("<rect"); pos != std::string::npos; pos = s.find("<rect", pos + 1)) ++rects;
        const bool valid = c1 == 0 && s.rfind("<?xml", 0) == 0 && s.find("<svg") != std::string::npos &&
                           s.find("</svg>") != std::string::npos && rects >= 129 * 129 &&
                           s.find("class=\"interface\"") != std::string::npos;
        o.require(valid, std::string("SVG at ") + param);
        if (c2 == 0) counts[k] = nlohmann::json::parse(slurp(js))["diagonal_sign_changes"].get<int>();
        ++k;
    }
    o.require(counts[1] > counts[0],
              "diagonal sign changes " + std::to_string(counts[1]) + " (15) > " + std::to_string(counts[0]) + " (3)");
    return o;
}

Outcome criterion10(const std::string& dir) {
    Outcome o;
    const std::string a = dir + "/eigs_run1.csv", b = dir + "/eigs_run2.csv";
    const int c1 = run_cli({"eigs", "--config", "builtin:E", "--range=-20:330", "--grid", "7000", "--out", a});
    const int c2 = run_cli({"eigs", "--config", "builtin:E", "--range=-20:330", "--grid", "7000", "--out", b});
    const std::string sa = slurp(a), sb = slurp(b);
    o.require(c1 == 0 && c2 == 0 && !sa.empty() && sa == sb,
              "two eigs runs byte-identical (" + std::to_string(sa.size()) + " bytes)");
    return o;
}

}  // namespace

int main() {
    const std::string dir = "acceptance_out";
    std::filesystem::create_directories(dir);
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"classical-limit spectrum (D)", criterion1},
        {"characteristic-function oracle (P)", criterion2},
        {"structural identities", criterion3},
        {"boundary identities", criterion4},
        {"Green's kernel", criterion5},
        {"resolvent", criterion6},
        {"spectral diagnostics (D, E)", criterion7},
        {"Parseval and expansion (D)", criterion8},
        {"figure reproduction (P at 3 and 15)", [&] { return criterion9(dir); }},
        {"determinism", [&] { return criterion10(dir); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
