#pragma once

#include "slgreen/problem.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace slgreen::cli {

enum Exit : int { Ok = 0, Usage = 1, InvalidConfig = 2, Numerical = 3 };

struct Options {
    std::string config;  // file path, or builtin:D / builtin:P / builtin:E
    std::optional<double> lambda;
    std::optional<std::string> range;  // "LO:HI"
    std::optional<int> grid;
    int nx = 129;  // points per axis
    int ny = 129;
    double tol = 1e-10;
    std::string out;
    std::string format = "csv";
    bool mu_squared = false;

    std::string u_minus = "0";
    std::string u_plus = "0";
    double u1 = 0.0;
    double u2 = 0.0;

    std::string f_minus;
    std::string f_plus;
    std::optional<int> terms;
    int grid_m = 200;
    bool zero_entries = false;

    std::string example;  // D, P or E
};

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err);
int cmd_eigs(const Options& o, std::ostream& out, std::ostream& err);
int cmd_green(const Options& o, std::ostream& out, std::ostream& err);
int cmd_resolve(const Options& o, std::ostream& out, std::ostream& err);
int cmd_expand(const Options& o, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& o, std::ostream& out, std::ostream& err);
int cmd_example(const Options& o, std::ostream& out, std::ostream& err);

enum class VerifyStatus { Pass, Fail, Skip };
const char* to_string(VerifyStatus s);

struct VerifyCheck {
    std::string name;
    VerifyStatus status = VerifyStatus::Pass;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

/// The invariant suite behind `verify`. Needs eigenvalues in [lo, hi] for the spectral checks.
std::vector<VerifyCheck> verify_suite(const Problem& problem, double lo, double hi, int grid);

/// SHA-256 of the canonical JSON form of a configuration, as "sha256:<hex>".
std::string config_digest(const ProblemConfig& config);

std::string format_double(double v);

/// Full command-line entry point: parses argv with CLI11 and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slgreen::cli
