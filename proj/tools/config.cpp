#include "config.hpp"

#include "taugeo/error.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace taugeo::cli {

namespace {

std::string where(const std::string& origin, const YAML::Mark& mark) {
    return origin + ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1);
}

[[noreturn]] void fail(const std::string& origin, const YAML::Node& node, const std::string& what) {
    throw ConfigError(where(origin, node.Mark()) + ": " + what);
}

void require_keys(const std::string& origin, const YAML::Node& node, const std::set<std::string>& allowed,
                  const std::string& section) {
    if (!node.IsMap()) fail(origin, node, section + " must be a mapping");
    for (const auto& kv : node) {
        auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) throw ConfigError(where(origin, kv.first.Mark()) + ": unknown key '" + key + "' in " + section);
    }
}

template <class T>
T scalar_as(const std::string& origin, const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) fail(origin, node, field + " must be a scalar");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail(origin, node, "invalid value for " + field);
    }
}

std::vector<std::string> string_list(const std::string& origin, const YAML::Node& node, const std::string& field) {
    if (!node.IsSequence()) fail(origin, node, field + " must be a list");
    std::vector<std::string> out;
    for (const auto& item : node) out.push_back(scalar_as<std::string>(origin, item, field));
    return out;
}

MatrixText matrix_text(const std::string& origin, const YAML::Node& node, const std::string& field) {
    if (!node.IsSequence() || node.size() == 0) fail(origin, node, field + " must be a non-empty list of rows");
    MatrixText out;
    for (const auto& row : node) {
        out.push_back(string_list(origin, row, field));
        if (out.back().size() != out.front().size()) fail(origin, row, field + " has rows of different length");
    }
    return out;
}

std::vector<MatrixText> matrix_list(const std::string& origin, const YAML::Node& node, const std::string& field) {
    if (!node.IsSequence()) fail(origin, node, field + " must be a list of matrices");
    std::vector<MatrixText> out;
    for (const auto& m : node) out.push_back(matrix_text(origin, m, field));
    return out;
}

std::array<std::string, 4> four(const std::string& origin, const YAML::Node& node, const std::string& field) {
    auto list = string_list(origin, node, field);
    if (list.size() != 4) fail(origin, node, field + " needs images of a, as, c, cs");
    return {list[0], list[1], list[2], list[3]};
}

void read_matrix(const std::string& origin, const YAML::Node& node, MatrixConfig& out) {
    require_keys(origin, node, {"u", "v0", "e", "h0"}, "matrix");
    if (node["u"]) out.u = matrix_list(origin, node["u"], "matrix.u");
    if (node["v0"]) out.v0 = string_list(origin, node["v0"], "matrix.v0");
    if (node["e"]) out.e = matrix_list(origin, node["e"], "matrix.e");
    if (node["h0"]) out.h0 = matrix_text(origin, node["h0"], "matrix.h0");
}

void read_sphere(const std::string& origin, const YAML::Node& node, SphereConfig& out) {
    require_keys(origin, node, {"solve", "degree_bound", "phase", "x_table"}, "sphere");
    if (node["solve"]) out.solve = scalar_as<bool>(origin, node["solve"], "sphere.solve");
    if (node["degree_bound"]) out.degree_bound = scalar_as<int>(origin, node["degree_bound"], "sphere.degree_bound");
    if (node["phase"]) out.phase = scalar_as<std::string>(origin, node["phase"], "sphere.phase");
    if (auto t = node["x_table"]) {
        require_keys(origin, t, {"plus", "minus", "z"}, "sphere.x_table");
        for (const char* k : {"plus", "minus", "z"})
            if (!t[k]) fail(origin, t, std::string("sphere.x_table needs '") + k + "'");
        out.x_table = {{four(origin, t["plus"], "x_table.plus"), four(origin, t["minus"], "x_table.minus"),
                        four(origin, t["z"], "x_table.z")}};
    }
}

nlohmann::ordered_json matrix_json(const MatrixText& m) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

}  // namespace

nlohmann::ordered_json RunConfig::echo() const {
    nlohmann::ordered_json j;
    j["preset"] = preset;
    j["seed"] = seed;
    j["samples"] = samples;
    j["scalar"] = scalar;
    j["tolerance"] = tolerance;
    j["suites"] = suites;
    j["inject"] = inject;
    if (preset == "qplane") j["qplane"] = {{"n", n}, {"m", m}};
    if (preset == "shiftline") j["shiftline"] = {{"hbar", hbar}};
    if (preset == "matrix") {
        nlohmann::ordered_json mj;
        auto list = [](const std::vector<MatrixText>& ms) {
            auto out = nlohmann::ordered_json::array();
            for (const auto& m : ms) out.push_back(matrix_json(m));
            return out;
        };
        mj["u"] = list(matrix.u);
        mj["v0"] = matrix.v0;
        mj["e"] = list(matrix.e);
        mj["h0"] = matrix_json(matrix.h0);
        j["matrix"] = mj;
    }
    if (preset == "sphere") {
        nlohmann::ordered_json sj;
        sj["solve"] = sphere.solve;
        sj["degree_bound"] = sphere.degree_bound;
        sj["phase"] = sphere.phase;
        if (sphere.x_table) {
            const auto& t = *sphere.x_table;
            sj["x_table"] = {{"plus", t[0]}, {"minus", t[1]}, {"z", t[2]}};
        }
        j["sphere"] = sj;
    }
    return j;
}

void RunConfig::validate() const {
    static const std::set<std::string> presets{"qplane", "shiftline", "matrix", "sphere"};
    if (!presets.count(preset)) throw ConfigError("preset must be one of qplane, shiftline, matrix, sphere");
    if (seed == 0) throw ConfigError("seed must be positive");
    if (samples == 0) throw ConfigError("samples must be positive");
    if (scalar != "exact" && scalar != "float") throw ConfigError("scalar must be exact or float");
    if (scalar == "float" && preset != "matrix") throw ConfigError("float scalars are only available for the matrix preset");
    if (!(tolerance > 0)) throw ConfigError("tolerance must be positive");
    if (n < 1 || m < 1) throw ConfigError("qplane n and m must be at least 1");
    for (const auto& k : inject)
        if (k != "gamma" && k != "table") throw ConfigError("unknown injection '" + k + "' (gamma, table)");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(origin + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                          ": " + e.msg);
    }
    if (!root || root.IsNull()) throw ConfigError(origin + ": empty config");
    require_keys(origin, root,
                 {"preset", "seed", "samples", "scalar", "tolerance", "suites", "output", "inject", "qplane",
                  "shiftline", "matrix", "sphere"},
                 "config");
    RunConfig cfg;
    if (!root["preset"]) fail(origin, root, "missing key 'preset'");
    cfg.preset = scalar_as<std::string>(origin, root["preset"], "preset");
    if (root["seed"]) {
        auto v = scalar_as<long long>(origin, root["seed"], "seed");
        if (v <= 0) fail(origin, root["seed"], "seed must be positive");
        cfg.seed = static_cast<std::uint64_t>(v);
    }
    if (root["samples"]) {
        auto v = scalar_as<long long>(origin, root["samples"], "samples");
        if (v <= 0) fail(origin, root["samples"], "samples must be positive");
        cfg.samples = static_cast<std::size_t>(v);
    }
    if (root["scalar"]) cfg.scalar = scalar_as<std::string>(origin, root["scalar"], "scalar");
    if (root["tolerance"]) cfg.tolerance = scalar_as<double>(origin, root["tolerance"], "tolerance");
    if (root["suites"]) cfg.suites = string_list(origin, root["suites"], "suites");
    if (root["output"]) cfg.output = scalar_as<std::string>(origin, root["output"], "output");
    if (root["inject"]) cfg.inject = string_list(origin, root["inject"], "inject");
    if (auto q = root["qplane"]) {
        require_keys(origin, q, {"n", "m"}, "qplane");
        if (q["n"]) cfg.n = scalar_as<int>(origin, q["n"], "qplane.n");
        if (q["m"]) cfg.m = scalar_as<int>(origin, q["m"], "qplane.m");
    }
    if (auto s = root["shiftline"]) {
        require_keys(origin, s, {"hbar"}, "shiftline");
        if (s["hbar"]) cfg.hbar = scalar_as<std::string>(origin, s["hbar"], "shiftline.hbar");
    }
    if (auto m = root["matrix"]) read_matrix(origin, m, cfg.matrix);
    if (auto s = root["sphere"]) read_sphere(origin, s, cfg.sphere);
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

std::string resolve_config_path(const std::string& path) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (fs::exists(p) || p.is_absolute()) return path;
    if (const char* dir = std::getenv("TAUGEO_CONFIG_DIR")) {
        fs::path candidate = fs::path(dir) / p;
        if (fs::exists(candidate)) return candidate.string();
    }
    return path;
}

RunConfig load_config(const std::string& path) {
    std::string resolved = resolve_config_path(path);
    std::ifstream in(resolved);
    if (!in) throw ConfigError(resolved + ": cannot open config");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), resolved);
}

}  // namespace taugeo::cli
