#pragma once

#include "slgreen/problem.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace slgreen {

/// Parses the JSON problem schema; unknown fields and missing required fields raise
/// ConfigError naming the JSON path (e.g. "/transmission/beta").
ProblemConfig config_from_json(const nlohmann::json& j);
ProblemConfig config_from_string(std::string_view text);
ProblemConfig load_config(const std::string& path);

nlohmann::json config_to_json(const ProblemConfig& config);

/// Built-in configurations: "D" (classical Dirichlet on [0, π] with an invisible
/// interface), "P" (the two-interval example with λ in both end conditions), and
/// "E" (strict mode, θ1 = θ2 = 1, nontrivial transmission and coefficients).
ProblemConfig builtin_config(std::string_view name);
std::vector<std::string> builtin_names();
/// Human-readable notes on how a built-in was encoded.
std::vector<std::string> builtin_notes(std::string_view name);

}  // namespace slgreen
