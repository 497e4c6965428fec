#include "slgreen/cli.hpp"

#include "slgreen/config_io.hpp"
#include "slgreen/error.hpp"
#include "slgreen/expansion.hpp"
#include "slgreen/greens.hpp"
#include "slgreen/spectrum.hpp"
#include "slgreen/structural.hpp"
#include "slgreen/svg.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace slgreen::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ProblemConfig load(const Options& o) {
    if (o.config.empty()) throw UsageError("--config is required");
    if (o.config.rfind("builtin:", 0) == 0) return builtin_config(o.config.substr(8));
    return load_config(o.config);
}

double parse_number(std::string_view s, const char* what) {
    double v = 0.0;
    std::string t(s);
    char* end = nullptr;
    v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
        throw UsageError(std::string("cannot parse ") + what + " '" + t + "'");
    return v;
}

std::pair<double, double> parse_range(const std::string& s) {
    const auto colon = s.find(':', 1);
    if (colon == std::string::npos) throw UsageError("--range must be LO:HI, got '" + s + "'");
    const double lo = parse_number(std::string_view(s).substr(0, colon), "range bound");
    const double hi = parse_number(std::string_view(s).substr(colon + 1), "range bound");
    if (!(lo < hi)) throw UsageError("--range needs LO < HI");
    return {lo, hi};
}

std::pair<double, double> require_range(const Options& o) {
    if (!o.range) throw UsageError("--range LO:HI is required");
    return parse_range(*o.range);
}

int grid_for(const Options& o, double lo, double hi) {
    const int g = o.grid.value_or(std::max(200, static_cast<int>(std::ceil(40.0 * (hi - lo)))));
    if (g < 2) throw UsageError("--grid must be at least 2");
    return g;
}

double require_lambda(const Options& o) {
    if (!o.lambda) throw UsageError("--lambda is required");
    return o.mu_squared ? *o.lambda * *o.lambda : *o.lambda;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (o.format == f) return;
    std::string list;
    for (const char* f : allowed) list += std::string(list.empty() ? "" : "|") + f;
    throw UsageError("--format must be one of " + list);
}

Expr parse_arg(const std::string& text, const char* flag) {
    try {
        return Expr::parse(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

std::string iso_timestamp() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << content;
    if (!f) throw UsageError("failed writing '" + path + "'");
}

/// Writes the primary body (to --out or the stream) plus optional companions and the manifest.
void emit(const Options& o, const std::string& command, const ProblemConfig& cfg, const json& settings,
          const std::string& body, std::ostream& out, const std::vector<std::pair<std::string, std::string>>& extra = {},
          const std::vector<std::string>& notes = {}) {
    if (o.out.empty()) {
        out << body;
        return;
    }
    std::vector<std::string> files{o.out};
    write_file(o.out, body);
    for (const auto& [suffix, content] : extra) {
        write_file(o.out + suffix, content);
        files.push_back(o.out + suffix);
    }
    json m;
    m["command"] = command;
    m["config_digest"] = config_digest(cfg);
    m["tool_version"] = SLGREEN_VERSION;
    m["integrator"] = {{"method", "rk4"}, {"steps_per_side", cfg.integrator.steps_per_side}};
    m["settings"] = settings;
    m["timestamp"] = iso_timestamp();
    m["outputs"] = files;
    if (!notes.empty()) m["notes"] = notes;
    write_file(o.out + ".manifest.json", m.dump(2) + "\n");
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return Usage;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return Usage;
    } catch (const ConfigError& e) {
        err << "invalid config: " << e.what() << '\n';
        return InvalidConfig;
    } catch (const AtEigenvalueError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return Numerical;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return Numerical;
    }
}

}  // namespace

std::string format_double(double v) { return fmt("%.17g", v); }

std::string config_digest(const ProblemConfig& config) {
    const std::string text = config_to_json(config).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
    std::string hex = "sha256:";
    char buf[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

const char* to_string(VerifyStatus s) {
    switch (s) {
    case VerifyStatus::Pass: return "pass";
    case VerifyStatus::Fail: return "fail";
    case VerifyStatus::Skip: return "skip";
    }
    return "?";
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const ProblemConfig cfg = load(o);
        const ValidationReport r = validate(cfg);
        json checks = json::array();
        for (const auto& c : r.checks) {
            out << to_string(c.status) << "  " << c.name << (c.message.empty() ? "" : "  " + c.message) << '\n';
            checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"message", c.message}});
        }
        out << (r.ok() ? "config ok" : "config invalid") << "  theta1=" << format_double(r.theta1)
            << " theta2=" << format_double(r.theta2) << '\n';
        if (!o.out.empty()) {
            const Minors& m = r.minors;
            json j{{"ok", r.ok()},
                   {"theta1", r.theta1},
                   {"theta2", r.theta2},
                   {"minors", {{"d12", m.d12}, {"d13", m.d13}, {"d14", m.d14}, {"d23", m.d23}, {"d24", m.d24}, {"d34", m.d34}}},
                   {"checks", checks}};
            std::ostringstream sink;
            emit(o, "validate", cfg, json::object(), j.dump(2) + "\n", sink);
        }
        if (!r.ok()) {
            for (const auto& f : r.failures()) err << "invalid config: " << f << '\n';
            return static_cast<int>(InvalidConfig);
        }
        return static_cast<int>(Ok);
    }, err);
}

int cmd_eigs(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        require_format(o, {"csv", "json"});
        const auto [lo, hi] = require_range(o);
        const int grid = grid_for(o, lo, hi);
        if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
        const ProblemConfig cfg = load(o);
        const Problem problem(cfg);
        const ScanResult r = scan(problem, lo, hi, grid, o.tol);
        for (const auto& w : r.warnings) err << "warning: " << w << '\n';

        std::string body;
        if (o.format == "csv") {
            body = "index,lambda,residual,omega_derivative,flag\n";
            for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
                const Eigenvalue& e = r.eigenvalues[i];
                body += std::to_string(i + 1) + "," + format_double(e.lambda) + "," + format_double(e.residual) + "," +
                        format_double(e.omega_derivative) + "," + to_string(e.flag) + "\n";
            }
        } else {
            json rows = json::array();
            for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
                const Eigenvalue& e = r.eigenvalues[i];
                rows.push_back({{"index", i + 1},
                                {"lambda", e.lambda},
                                {"residual", e.residual},
                                {"omega_derivative", e.omega_derivative},
                                {"flag", to_string(e.flag)}});
            }
            body = json{{"eigenvalues", rows}, {"warnings", r.warnings}}.dump(2) + "\n";
        }
        emit(o, "eigs", cfg, {{"range", {lo, hi}}, {"grid", grid}, {"tol", o.tol}, {"format", o.format}}, body, out);
        return static_cast<int>(Ok);
    }, err);
}

int cmd_green(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        require_format(o, {"csv", "json", "svg"});
        const double lambda = require_lambda(o);
        if (o.nx < 9 || o.ny < 9) throw UsageError("--nx and --ny must be at least 9");
        const ProblemConfig cfg = load(o);
        const Problem problem(cfg);

        const double half = std::max(0.5, 1e-3 * std::abs(lambda));
        const ScanResult near = scan(problem, lambda - half, lambda + half, 63, 1e-12);
        for (const Eigenvalue& e : near.eigenvalues) {
            if (std::abs(e.lambda - lambda) <= 1e-6) {
                err << "numerical failure: lambda = " << format_double(lambda) << " is within 1e-6 of eigenvalue "
                    << format_double(e.lambda) << '\n';
                return static_cast<int>(Numerical);
            }
        }

        const GreenGrid g = green_grid(problem, lambda, o.nx - 1, o.ny - 1);
        std::string body;
        if (o.format == "csv") {
            std::string s = "x,y,G\n";
            s.reserve(g.values.size() * 64);
            for (std::size_t i = 0; i < g.xs.size(); ++i)
                for (std::size_t j = 0; j < g.ys.size(); ++j)
                    s += format_double(g.xs[i]) + "," + format_double(g.ys[j]) + "," + format_double(g.at(i, j)) + "\n";
            body = std::move(s);
        } else if (o.format == "json") {
            json values = json::array();
            for (std::size_t i = 0; i < g.xs.size(); ++i)
                values.push_back(std::vector<double>(g.values.begin() + i * g.ys.size(),
                                                     g.values.begin() + (i + 1) * g.ys.size()));
            json j{{"lambda", lambda}, {"eps_c", g.eps_c}, {"xs", g.xs}, {"ys", g.ys},
                   {"values", values}, {"max_abs", g.max_abs()}};
            if (g.xs.size() == g.ys.size()) j["diagonal_sign_changes"] = diagonal_sign_changes(g);
            body = j.dump() + "\n";
        } else {
            std::ostringstream s;
            const std::string title = "Green's function G(x, y; λ = " + fmt("%.6g", lambda) + ")";
            write_svg_heatmap(s, g, cfg.a, cfg.c, cfg.b, title);
            body = s.str();
        }
        emit(o, "green", cfg,
             {{"lambda", lambda}, {"mu_squared", o.mu_squared}, {"nx", o.nx}, {"ny", o.ny}, {"format", o.format}}, body,
             out);
        return static_cast<int>(Ok);
    }, err);
}

int cmd_resolve(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        require_format(o, {"csv", "json"});
        const double lambda = require_lambda(o);
        const Expr um = parse_arg(o.u_minus, "--u-minus");
        const Expr up = parse_arg(o.u_plus, "--u-plus");
        const ProblemConfig cfg = load(o);
        const Problem problem(cfg);
        const HVector y = resolve(problem, lambda, um, up, o.u1, o.u2);
        const ResolventReport rep = verify_resolvent(problem, lambda, y, um, up, o.u1, o.u2);
        const PathPair& paths = *y.f.paths();

        json report{{"lambda", lambda},
                    {"f1", nullable(y.f1)},
                    {"f2", nullable(y.f2)},
                    {"residuals",
                     {{"ode", rep.ode},
                      {"bc_left", rep.bc_left},
                      {"bc_right", rep.bc_right},
                      {"transmission", rep.transmission},
                      {"components", rep.components}}}};
        const json settings{{"lambda", lambda}, {"u_minus", o.u_minus}, {"u_plus", o.u_plus},
                            {"u1", o.u1},       {"u2", o.u2},           {"format", o.format}};
        if (o.format == "json") {
            std::vector<double> xs, ys, yps;
            for (const SolutionPath* p : {&paths.left, &paths.right})
                for (const PathNode& n : p->nodes) {
                    xs.push_back(n.x);
                    ys.push_back(n.y);
                    yps.push_back(n.yp);
                }
            report["nodes"] = {{"x", xs}, {"Y", ys}, {"Yprime", yps}};
            emit(o, "resolve", cfg, settings, report.dump() + "\n", out);
            return static_cast<int>(Ok);
        }
        std::string body = "x,Y,Yprime\n";
        for (const SolutionPath* p : {&paths.left, &paths.right})
            for (const PathNode& n : p->nodes)
                body += format_double(n.x) + "," + format_double(n.y) + "," + format_double(n.yp) + "\n";
        if (o.out.empty()) err << report.dump(2) << '\n';
        emit(o, "resolve", cfg, settings, body, out, {{".report.json", report.dump(2) + "\n"}});
        return static_cast<int>(Ok);
    }, err);
}

int cmd_expand(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        require_format(o, {"csv", "json"});
        if (o.f_minus.empty() || o.f_plus.empty()) throw UsageError("--f-minus and --f-plus are required");
        const Expr fm = parse_arg(o.f_minus, "--f-minus");
        const Expr fp = parse_arg(o.f_plus, "--f-plus");
        const auto [lo, hi] = require_range(o);
        const int grid = grid_for(o, lo, hi);
        if (o.grid_m < 2) throw UsageError("--grid-m must be at least 2");
        const ProblemConfig cfg = load(o);
        const Problem problem(cfg);
        const ScanResult r = scan(problem, lo, hi, grid, o.tol);
        for (const auto& w : r.warnings) err << "warning: " << w << '\n';
        const std::size_t available = r.eigenvalues.size();
        const std::size_t n = o.terms ? static_cast<std::size_t>(std::max(0, *o.terms)) : available;
        if (n == 0) throw NumericalError("no eigenvalues in the requested range");
        if (n > available)
            throw NumericalError("requested " + std::to_string(n) + " terms but the range holds " +
                                 std::to_string(available) + " eigenvalues");
        const std::vector<Eigenpair> pairs =
            eigenpairs(problem, std::span<const Eigenvalue>(r.eigenvalues.data(), n));
        const HVector f = make_hvector(problem, ExprPair{fm, fp}, o.zero_entries);
        const ParsevalReport pr = parseval_report(problem, pairs, f, n);
        const auto table = expansion_error(problem, pairs, f, n, o.grid_m);
        for (const auto& w : pr.warnings) err << "warning: " << w << '\n';

        json errors = json::array();
        for (const auto& row : table) errors.push_back({{"terms", row.terms}, {"sup_error", row.sup_error}});
        json report{{"norm_sq", pr.norm_sq},
                    {"deficit", pr.deficit},
                    {"indefinite", pr.indefinite},
                    {"warnings", pr.warnings},
                    {"expansion_error", errors}};
        const json settings{{"f_minus", o.f_minus}, {"f_plus", o.f_plus}, {"range", {lo, hi}},
                            {"grid", grid},         {"terms", n},         {"grid_m", o.grid_m},
                            {"zero_entries", o.zero_entries}, {"format", o.format}};
        if (o.format == "json") {
            json rows = json::array();
            for (std::size_t k = 0; k < n; ++k)
                rows.push_back({{"n", k + 1},
                                {"lambda", pairs[k].eigenvalue.lambda},
                                {"coefficient", pr.coefficients[k]},
                                {"partial_sum", pr.partial_sums[k]}});
            report["coefficients"] = rows;
            emit(o, "expand", cfg, settings, report.dump(2) + "\n", out);
            return static_cast<int>(Ok);
        }
        std::string body = "n,lambda,coefficient,partial_sum\n";
        for (std::size_t k = 0; k < n; ++k)
            body += std::to_string(k + 1) + "," + format_double(pairs[k].eigenvalue.lambda) + "," +
                    format_double(pr.coefficients[k]) + "," + format_double(pr.partial_sums[k]) + "\n";
        if (o.out.empty()) err << report.dump(2) << '\n';
        emit(o, "expand", cfg, settings, body, out, {{".report.json", report.dump(2) + "\n"}});
        return static_cast<int>(Ok);
    }, err);
}

std::vector<VerifyCheck> verify_suite(const Problem& problem, double lo, double hi, int grid) {
    const ProblemConfig& cfg = problem.config();
    const Minors& m = problem.minors();
    const bool indefinite = cfg.theta1() < 0.0 || cfg.theta2() < 0.0;
    const std::string indefinite_reason = "indefinite inner product (θ < 0)";
    std::vector<VerifyCheck> checks;
    auto add = [&](std::string name, double value, double threshold, bool pass, std::string detail = {}) {
        checks.push_back({std::move(name), pass ? VerifyStatus::Pass : VerifyStatus::Fail, value, threshold,
                          std::move(detail)});
    };
    auto skip = [&](std::string name, std::string why) {
        checks.push_back({std::move(name), VerifyStatus::Skip, 0.0, 0.0, std::move(why)});
    };
    std::mt19937_64 rng(20261014);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> in_range(lo, hi);

    {
        double worst = plucker_defect_ulps(cfg.transmission);
        for (int k = 0; k < 1000; ++k) {
            TransmissionSpec t;
            for (auto& row : t.beta)
                for (double& v : row) v = unit(rng);
            worst = std::max(worst, plucker_defect_ulps(t));
        }
        add("plucker_identity", worst, 8.0, worst <= 8.0, "ulps, config plus 1000 random matrices");
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const State s{unit(rng), unit(rng)};
            worst = std::max(worst, jump_roundtrip_ulps(m, s));
            TransmissionSpec t;
            for (auto& row : t.beta)
                for (double& v : row) v = unit(rng);
            const Minors rm = minors(t);
            if (rm.d12 != 0.0 && rm.d34 != 0.0) worst = std::max(worst, jump_roundtrip_ulps(rm, s));
        }
        add("jump_roundtrip", worst, 8.0, worst <= 8.0, "ulps");
    }

    std::vector<double> sample_lambdas;
    for (int k = 0; k < 50; ++k) sample_lambdas.push_back(in_range(rng));
    {
        double worst = 0.0;
        for (int k = 0; k < 4; ++k) {
            const FundamentalSystem fs = fundamental_system(problem, sample_lambdas[k]);
            for (auto pair : {std::pair{&fs.phi_minus, &fs.psi_minus}, std::pair{&fs.phi_plus, &fs.psi_plus}}) {
                double wmin = std::numeric_limits<double>::infinity(), wmax = -wmin, wabs = 0.0;
                for (std::size_t i = 0; i < pair.first->nodes.size(); ++i) {
                    const double w = wronskian_at_node(*pair.first, *pair.second, i);
                    wmin = std::min(wmin, w);
                    wmax = std::max(wmax, w);
                    wabs = std::max(wabs, std::abs(w));
                }
                worst = std::max(worst, (wmax - wmin) / std::max(1.0, wabs));
            }
        }
        add("wronskian_constancy", worst, 1e-8, worst <= 1e-8, "relative spread over nodes");
    }
    {
        double worst = 0.0;
        std::string detail = "50 random lambda";
        for (double l : sample_lambdas) {
            try {
                const FundamentalSystem fs = fundamental_system(problem, l);
                const double lhs = m.d34 * fs.omega_minus, rhs = m.d12 * fs.omega_plus;
                worst = std::max(worst, std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
            } catch (const InconsistencyError& e) {
                worst = std::numeric_limits<double>::infinity();
                detail = e.what();
            }
        }
        add("omega_relation", worst, 1e-7, worst <= 1e-7, detail);
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double l = sample_lambdas[k];
            const FundamentalSystem fs = fundamental_system(problem, l);
            const State pa = fs.phi_minus.front();
            const State pb = fs.psi_plus.back();
            const double left = cfg.left.c0 * pa.y - cfg.left.c1 * pa.yp - l * (cfg.left.c0p * pa.y - cfg.left.c1p * pa.yp);
            const double right =
                cfg.right.c0 * pb.y - cfg.right.c1 * pb.yp + l * (cfg.right.c0p * pb.y - cfg.right.c1p * pb.yp);
            worst = std::max(worst, std::max(std::abs(left), std::abs(right)) / ((1.0 + std::abs(l)) * (1.0 + std::abs(l))));
        }
        add("boundary_identities", worst, 1e-12, worst <= 1e-12, "scaled by (1 + |λ|)²");
    }

    const ScanResult sr = scan(problem, lo, hi, grid, 1e-10);
    std::vector<Eigenpair> pairs;
    std::string pair_error;
    try {
        pairs = eigenpairs(problem, sr.eigenvalues);
    } catch (const NumericalError& e) {
        pair_error = e.what();
    }

    double regular = 0.5 * (lo + hi);
    {
        double best = -1.0;
        for (int k = 0; k < 16; ++k) {
            const double l = lo + (k + 0.5) / 16.0 * (hi - lo);
            double d = std::numeric_limits<double>::infinity();
            for (const Eigenvalue& e : sr.eigenvalues) d = std::min(d, std::abs(e.lambda - l));
            if (d > best) {
                best = d;
                regular = l;
            }
        }
    }
    {
        const GreenGrid g = green_grid(problem, regular, 64, 64);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.xs.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::abs(g.at(i, j) - g.at(j, i)));
        const double rel = worst / std::max(g.max_abs(), std::numeric_limits<double>::min());
        add("kernel_symmetry", rel, 1e-7, rel <= 1e-7, "65x65 grid at lambda = " + fmt("%.6g", regular));
    }
    {
        const Expr one = Expr::parse("1");
        const HVector y = resolve(problem, regular, one, one, 1.0, 1.0);
        const ResolventReport r = verify_resolvent(problem, regular, y, one, one, 1.0, 1.0);
        const double worst = std::max({r.ode, r.bc_left, r.bc_right, r.transmission});
        add("resolvent_residuals", worst, 1e-4, worst <= 1e-4, "u = 1, u1 = u2 = 1 at lambda = " + fmt("%.6g", regular));
    }

    if (sr.eigenvalues.empty()) {
        for (const char* name : {"eigen_residuals", "dependency", "simplicity", "gram_orthonormality", "bessel"})
            skip(name, "no eigenvalues in [" + fmt("%g", lo) + ", " + fmt("%g", hi) + "]");
        return checks;
    }
    {
        double worst = 0.0;
        for (const Eigenvalue& e : sr.eigenvalues) worst = std::max(worst, e.residual / std::max(1.0, sr.omega_sup));
        add("eigen_residuals", worst, 1e-7, worst <= 1e-7,
            std::to_string(sr.eigenvalues.size()) + " eigenvalues, |ω| relative to sup over the scan");
    }
    if (!pair_error.empty()) {
        add("dependency", std::numeric_limits<double>::infinity(), 1e-4, false, pair_error);
    } else {
        double worst = 0.0;
        for (const Eigenpair& p : pairs) worst = std::max(worst, p.dependency_residual);
        add("dependency", worst, 1e-4, worst <= 1e-4, "sup|ψ - kφ| / sup|ψ|");
    }
    if (indefinite) {
        skip("simplicity", indefinite_reason);
    } else {
        double smallest = std::numeric_limits<double>::infinity();
        for (const Eigenvalue& e : sr.eigenvalues) smallest = std::min(smallest, std::abs(e.omega_derivative));
        add("simplicity", smallest, 1e-6, smallest > 1e-6, "min |ω'(λn)|");
    }
    if (indefinite) {
        skip("gram_orthonormality", indefinite_reason);
        skip("bessel", indefinite_reason);
    } else if (!pair_error.empty()) {
        add("gram_orthonormality", std::numeric_limits<double>::infinity(), 1e-5, false, pair_error);
        add("bessel", std::numeric_limits<double>::infinity(), 1e-6, false, pair_error);
    } else {
        const std::size_t k = std::min<std::size_t>(6, pairs.size());
        const GramReport g = orthogonality_check(problem, std::span<const Eigenpair>(pairs.data(), k));
        const double worst = std::max(g.max_off_diagonal, g.max_diagonal_deviation);
        add("gram_orthonormality", worst, 1e-5, worst <= 1e-5, "first " + std::to_string(k) + " eigenpairs");

        const Expr f = Expr::parse("1 + x");
        const HVector fv = make_hvector(problem, ExprPair{f, f});
        const ParsevalReport pr = parseval_report(problem, pairs, fv, pairs.size());
        double worst_ratio = 0.0;
        bool monotone = true;
        for (std::size_t i = 0; i < pr.partial_sums.size(); ++i) {
            worst_ratio = std::max(worst_ratio, pr.partial_sums[i] / pr.norm_sq);
            if (i > 0 && pr.partial_sums[i] < pr.partial_sums[i - 1]) monotone = false;
        }
        add("bessel", worst_ratio, 1.0 + 1e-6, monotone && worst_ratio <= 1.0 + 1e-6,
            "max partial sum / norm² for f = 1 + x");
    }
    return checks;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const auto [lo, hi] = o.range ? parse_range(*o.range) : std::pair{-10.0, 60.0};
        const int grid = grid_for(o, lo, hi);
        const ProblemConfig cfg = load(o);
        const Problem problem(cfg);
        for (const auto& w : problem.report().warnings()) out << "warn  " << w << '\n';
        const auto checks = verify_suite(problem, lo, hi, grid);
        bool ok = true;
        json rows = json::array();
        for (const auto& c : checks) {
            char line[256];
            if (c.status == VerifyStatus::Skip)
                std::snprintf(line, sizeof line, "%-4s  %-22s  %s", to_string(c.status), c.name.c_str(),
                              c.detail.c_str());
            else
                std::snprintf(line, sizeof line, "%-4s  %-22s  %.3e (limit %.1e)  %s", to_string(c.status),
                              c.name.c_str(), c.value, c.threshold, c.detail.c_str());
            out << line << '\n';
            ok = ok && c.status != VerifyStatus::Fail;
            rows.push_back({{"name", c.name},
                            {"status", to_string(c.status)},
                            {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
                            {"threshold", c.threshold},
                            {"detail", c.detail}});
        }
        if (!o.out.empty()) {
            std::ostringstream sink;
            emit(o, "verify", cfg, {{"range", {lo, hi}}, {"grid", grid}},
                 json{{"ok", ok}, {"checks", rows}}.dump(2) + "\n", sink);
        }
        return static_cast<int>(ok ? Ok : Numerical);
    }, err);
}

int cmd_example(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const auto names = builtin_names();
        if (std::find(names.begin(), names.end(), o.example) == names.end())
            throw UsageError("unknown example '" + o.example + "' (expected D, P or E)");
        const ProblemConfig cfg = builtin_config(o.example);
        emit(o, "example", cfg, {{"name", o.example}}, config_to_json(cfg).dump(2) + "\n", out, {},
             builtin_notes(o.example));
        return static_cast<int>(Ok);
    }, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Green's function, spectrum and eigenfunction expansions for two-interval Sturm-Liouville problems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SLGREEN_VERSION);
    Options o;
    double lambda = 0.0;
    int grid = 0, terms = 0;
    std::string range;

    CLI::Option* lambda_opt = nullptr;
    CLI::Option* grid_opt = nullptr;
    CLI::Option* terms_opt = nullptr;
    CLI::Option* range_opt = nullptr;
    std::vector<CLI::Option*> lambda_opts, grid_opts, range_opts;

    auto config = [&](CLI::App* s) {
        s->add_option("--config", o.config, "problem JSON file, or builtin:D|P|E")->required();
    };
    auto output = [&](CLI::App* s, std::vector<std::string> formats) {
        s->add_option("--out", o.out, "output file (a manifest sidecar is written next to it)");
        if (!formats.empty()) s->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
    };
    auto with_lambda = [&](CLI::App* s) {
        lambda_opts.push_back(s->add_option("--lambda", lambda, "spectral parameter"));
        s->add_flag("--mu-squared", o.mu_squared, "read --lambda as μ and use λ = μ²");
    };
    auto with_range = [&](CLI::App* s) {
        range_opts.push_back(s->add_option("--range", range, "eigenvalue search interval LO:HI"));
        grid_opts.push_back(s->add_option("--grid", grid, "number of scan cells"));
        s->add_option("--tol", o.tol, "root tolerance");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a configuration");
    config(validate_cmd);
    output(validate_cmd, {});

    CLI::App* eigs_cmd = app.add_subcommand("eigs", "locate eigenvalues as zeros of ω(λ)");
    config(eigs_cmd);
    with_range(eigs_cmd);
    output(eigs_cmd, {"csv", "json"});

    CLI::App* green_cmd = app.add_subcommand("green", "tabulate G(x, y; λ)");
    config(green_cmd);
    with_lambda(green_cmd);
    green_cmd->add_option("--nx", o.nx, "grid points along x");
    green_cmd->add_option("--ny", o.ny, "grid points along y");
    output(green_cmd, {"csv", "json", "svg"});

    CLI::App* resolve_cmd = app.add_subcommand("resolve", "solve (λ - L) Y = (u, u1, u2)");
    config(resolve_cmd);
    with_lambda(resolve_cmd);
    resolve_cmd->add_option("--u-minus", o.u_minus, "u on [a, c)");
    resolve_cmd->add_option("--u-plus", o.u_plus, "u on (c, b]");
    resolve_cmd->add_option("--u1", o.u1, "left boundary datum");
    resolve_cmd->add_option("--u2", o.u2, "right boundary datum");
    output(resolve_cmd, {"csv", "json"});

    CLI::App* expand_cmd = app.add_subcommand("expand", "eigenfunction expansion and Parseval report");
    config(expand_cmd);
    with_range(expand_cmd);
    expand_cmd->add_option("--f-minus", o.f_minus, "f on [a, c)")->required();
    expand_cmd->add_option("--f-plus", o.f_plus, "f on (c, b]")->required();
    terms_opt = expand_cmd->add_option("--terms", terms, "number of eigenpairs");
    expand_cmd->add_option("--grid-m", o.grid_m, "sup-norm sample points per side");
    expand_cmd->add_flag("--zero-entries", o.zero_entries, "zero the boundary entries of F");
    output(expand_cmd, {"csv", "json"});

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    config(verify_cmd);
    with_range(verify_cmd);
    output(verify_cmd, {});

    CLI::App* example_cmd = app.add_subcommand("example", "write a built-in configuration");
    example_cmd->add_option("name", o.example, "D, P or E")->required();
    output(example_cmd, {});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? static_cast<int>(Ok) : static_cast<int>(Usage);
    }
    for (CLI::Option* opt : lambda_opts)
        if (opt->count()) lambda_opt = opt;
    for (CLI::Option* opt : grid_opts)
        if (opt->count()) grid_opt = opt;
    for (CLI::Option* opt : range_opts)
        if (opt->count()) range_opt = opt;
    if (lambda_opt) o.lambda = lambda;
    if (grid_opt) o.grid = grid;
    if (terms_opt && terms_opt->count()) o.terms = terms;
    if (range_opt) o.range = range;

    if (validate_cmd->parsed()) return cmd_validate(o, out, err);
    if (eigs_cmd->parsed()) return cmd_eigs(o, out, err);
    if (green_cmd->parsed()) return cmd_green(o, out, err);
    if (resolve_cmd->parsed()) return cmd_resolve(o, out, err);
    if (expand_cmd->parsed()) return cmd_expand(o, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (example_cmd->parsed()) return cmd_example(o, out, err);
    return static_cast<int>(Usage);
}

}  // namespace slgreen::cli
