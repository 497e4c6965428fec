#include "slgreen/config_io.hpp"
#include "slgreen/error.hpp"
#include "slgreen/expansion.hpp"
#include "slgreen/greens.hpp"
#include "slgreen/spectrum.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace slgreen;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict minors_dict(const Minors& m) {
    py::dict d;
    d["d12"] = m.d12;
    d["d13"] = m.d13;
    d["d14"] = m.d14;
    d["d23"] = m.d23;
    d["d24"] = m.d24;
    d["d34"] = m.d34;
    return d;
}

py::dict path_dict(const SolutionPath& left, const SolutionPath& right) {
    std::vector<double> x, y, yp;
    for (const SolutionPath* p : {&left, &right})
        for (const PathNode& n : p->nodes) {
            x.push_back(n.x);
            y.push_back(n.y);
            yp.push_back(n.yp);
        }
    py::dict d;
    d["x"] = to_array(x);
    d["y"] = to_array(y);
    d["yprime"] = to_array(yp);
    return d;
}

Weighting weighting_of(const std::string& w) {
    if (w == "jump_consistent") return Weighting::JumpConsistent;
    if (w == "as_printed") return Weighting::AsPrinted;
    throw py::value_error("weighting must be 'jump_consistent' or 'as_printed'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-interval Sturm-Liouville problems: spectrum, Green's function, resolvent, expansions";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<AtEigenvalueError>(m, "AtEigenvalueError", numerical.ptr());

    m.def("eval_expression", [](const std::string& s, double x) { return Expr::parse(s).eval(x); },
          py::arg("source"), py::arg("x"));
    m.def("unparse_expression", [](const std::string& s) { return Expr::parse(s).to_string(); });
    m.def("minors", [](const std::array<std::array<double, 4>, 2>& beta) {
        return minors_dict(minors(TransmissionSpec{beta}));
    });
    m.def("builtin_config_json", [](const std::string& name) { return config_to_json(builtin_config(name)).dump(); });

    py::class_<Problem>(m, "Problem")
        .def(py::init([](const std::string& json_text, const std::string& weighting) {
                 return Problem(config_from_string(json_text), weighting_of(weighting));
             }),
             py::arg("config_json"), py::arg("weighting") = "jump_consistent")
        .def_static("builtin", [](const std::string& name) { return Problem(builtin_config(name)); })
        .def_property_readonly("theta1", [](const Problem& p) { return p.config().theta1(); })
        .def_property_readonly("theta2", [](const Problem& p) { return p.config().theta2(); })
        .def_property_readonly("minors", [](const Problem& p) { return minors_dict(p.minors()); })
        .def_property_readonly("config_json", [](const Problem& p) { return config_to_json(p.config()).dump(); })
        .def_property_readonly("warnings", [](const Problem& p) { return p.report().warnings(); })
        .def_property_readonly("domain", [](const Problem& p) {
            return py::make_tuple(p.config().a, p.config().c, p.config().b);
        });

    py::class_<FundamentalSystem>(m, "FundamentalSystem")
        .def_readonly("lambda_", &FundamentalSystem::lambda)
        .def_readonly("omega", &FundamentalSystem::omega)
        .def_readonly("omega_minus", &FundamentalSystem::omega_minus)
        .def_readonly("omega_plus", &FundamentalSystem::omega_plus)
        .def("phi", [](const FundamentalSystem& fs, double x) { auto s = fs.phi(x); return py::make_tuple(s.y, s.yp); })
        .def("psi", [](const FundamentalSystem& fs, double x) { auto s = fs.psi(x); return py::make_tuple(s.y, s.yp); })
        .def("green", [](const FundamentalSystem& fs, double x, double y) { return green_eval(fs, x, y); });

    m.def("fundamental_system", &fundamental_system, py::arg("problem"), py::arg("lam"));
    m.def("omega", &omega, py::arg("problem"), py::arg("lam"));

    py::class_<Eigenvalue>(m, "Eigenvalue")
        .def_readonly("lambda_", &Eigenvalue::lambda)
        .def_readonly("residual", &Eigenvalue::residual)
        .def_readonly("omega_derivative", &Eigenvalue::omega_derivative)
        .def_property_readonly("flag", [](const Eigenvalue& e) { return std::string(to_string(e.flag)); })
        .def("__repr__", [](const Eigenvalue& e) { return "Eigenvalue(" + std::to_string(e.lambda) + ")"; });

    m.def(
        "scan",
        [](const Problem& p, double lo, double hi, int grid, double tol) {
            py::gil_scoped_release release;
            return scan(p, lo, hi, grid, tol).eigenvalues;
        },
        py::arg("problem"), py::arg("lo"), py::arg("hi"), py::arg("grid"), py::arg("tol") = 1e-10);

    py::class_<Eigenpair>(m, "Eigenpair")
        .def_property_readonly("lambda_", [](const Eigenpair& e) { return e.eigenvalue.lambda; })
        .def_readonly("f1", &Eigenpair::f1)
        .def_readonly("f2", &Eigenpair::f2)
        .def_readonly("h_norm", &Eigenpair::h_norm)
        .def_readonly("indefinite", &Eigenpair::indefinite)
        .def_readonly("dependency_residual", &Eigenpair::dependency_residual)
        .def_property_readonly("path", [](const Eigenpair& e) { return path_dict(e.left, e.right); });

    m.def("eigenpairs", [](const Problem& p, const std::vector<Eigenvalue>& evs) { return eigenpairs(p, evs); });
    m.def("gram", [](const Problem& p, const std::vector<Eigenpair>& pairs) {
        return orthogonality_check(p, pairs).gram;
    });

    m.def(
        "green_grid",
        [](const Problem& p, double lam, int nx, int ny) {
            const GreenGrid g = green_grid(p, lam, nx, ny);
            py::array_t<double> values({g.xs.size(), g.ys.size()});
            std::copy(g.values.begin(), g.values.end(), values.mutable_data());
            return py::make_tuple(to_array(g.xs), to_array(g.ys), values);
        },
        py::arg("problem"), py::arg("lam"), py::arg("nx") = 128, py::arg("ny") = 128);

    m.def(
        "resolve",
        [](const Problem& p, double lam, const std::string& um, const std::string& up, double u1, double u2) {
            const Expr a = Expr::parse(um), b = Expr::parse(up);
            const HVector y = resolve(p, lam, a, b, u1, u2);
            const ResolventReport r = verify_resolvent(p, lam, y, a, b, u1, u2);
            py::dict d = path_dict(y.f.paths()->left, y.f.paths()->right);
            d["f1"] = y.f1;
            d["f2"] = y.f2;
            py::dict res;
            res["ode"] = r.ode;
            res["bc_left"] = r.bc_left;
            res["bc_right"] = r.bc_right;
            res["transmission"] = r.transmission;
            d["residuals"] = res;
            return d;
        },
        py::arg("problem"), py::arg("lam"), py::arg("u_minus") = "0", py::arg("u_plus") = "0", py::arg("u1") = 0.0,
        py::arg("u2") = 0.0);

    m.def(
        "parseval",
        [](const Problem& p, const std::vector<Eigenpair>& pairs, const std::string& fm, const std::string& fp,
           bool zero_entries) {
            const HVector f = make_hvector(p, ExprPair{Expr::parse(fm), Expr::parse(fp)}, zero_entries);
            const ParsevalReport r = parseval_report(p, pairs, f, pairs.size());
            py::dict d;
            d["norm_sq"] = r.norm_sq;
            d["coefficients"] = to_array(r.coefficients);
            d["partial_sums"] = to_array(r.partial_sums);
            d["deficit"] = r.deficit;
            d["indefinite"] = r.indefinite;
            return d;
        },
        py::arg("problem"), py::arg("pairs"), py::arg("f_minus"), py::arg("f_plus"), py::arg("zero_entries") = false);

    m.attr("__version__") = SLGREEN_VERSION;
}
