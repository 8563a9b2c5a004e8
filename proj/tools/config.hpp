#pragma once

#include "json.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace taugeo::cli {

/// Matrices are lists of rows of scalar text ("1", "i", "3/5", "0.6+0.8*i").
using MatrixText = std::vector<std::vector<std::string>>;

struct MatrixConfig {
    std::vector<MatrixText> u;
    std::vector<std::string> v0;
    std::vector<MatrixText> e;
    MatrixText h0;
};

struct SphereConfig {
    bool solve = false;
    int degree_bound = 2;
    std::string phase = "1";
    /// plus, minus, z images of (a, as, c, cs).
    std::optional<std::array<std::array<std::string, 4>, 3>> x_table;
};

struct RunConfig {
    std::string preset;
    std::uint64_t seed = 42;
    std::size_t samples = 200;
    std::string scalar = "exact";
    double tolerance = 1e-9;
    /// Check-name prefixes to run; empty runs everything.
    std::vector<std::string> suites;
    std::string output;
    /// Corruptions to apply: "gamma", "table".
    std::vector<std::string> inject;
    int n = 4;
    int m = 4;
    std::string hbar = "1";
    MatrixConfig matrix;
    SphereConfig sphere;

    /// Canonical echo with a fixed key order.
    nlohmann::ordered_json echo() const;
    /// Throws ConfigError for out-of-range values.
    void validate() const;
};

/// Parses YAML text. Unknown keys and type errors throw ConfigError with
/// origin:line:column.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");

/// Reads a file; relative paths that do not exist are retried under
/// $TAUGEO_CONFIG_DIR.
RunConfig load_config(const std::string& path);

/// Path resolution used by load_config.
std::string resolve_config_path(const std::string& path);

}  // namespace taugeo::cli
