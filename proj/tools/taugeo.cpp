#include "config.hpp"
#include "report.hpp"
#include "suites.hpp"

#include "taugeo/error.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace taugeo::cli;

namespace {

struct Overrides {
    std::uint64_t seed = 0;
    long long samples = 0;
    std::string scalar;
    double tolerance = 0;
    bool solve = false;
    std::vector<std::string> inject;
    std::string format;
    std::string output;
    bool no_timing = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--seed", o.seed, "Random seed (positive)");
    cmd->add_option("--samples", o.samples, "Samples per randomized check (positive)");
    cmd->add_option("--scalar", o.scalar, "Scalar mode")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--tolerance", o.tolerance, "Float tolerance");
    cmd->add_flag("--solve", o.solve, "Solve for the sphere X table");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--output,-o", o.output, "Write the report to a file");
    cmd->add_flag("--no-timing", o.no_timing, "Omit elapsed_ms from JSON output");
}

void apply(RunConfig& cfg, const Overrides& o, const CLI::App* cmd) {
    if (cmd->count("--seed")) {
        if (o.seed == 0) throw taugeo::ConfigError("--seed must be positive");
        cfg.seed = o.seed;
    }
    if (cmd->count("--samples")) {
        if (o.samples <= 0) throw taugeo::ConfigError("--samples must be positive");
        cfg.samples = static_cast<std::size_t>(o.samples);
    }
    if (cmd->count("--scalar")) cfg.scalar = o.scalar;
    if (cmd->count("--tolerance")) cfg.tolerance = o.tolerance;
    if (o.solve) cfg.sphere.solve = true;
    for (const auto& k : o.inject) cfg.inject.push_back(k);
    if (!o.output.empty()) cfg.output = o.output;
    cfg.validate();
}

int emit(const Report& report, const Overrides& o, const std::string& output) {
    std::string format = !o.format.empty() ? o.format : (output.empty() || output == "-" ? "text" : "json");
    std::string body = format == "json" ? to_json(report, !o.no_timing).dump(2) + "\n" : render_text(report);
    write_output(output, body);
    return report.any_failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twisted-derivation geometry: demos, verification suites and reports"};
    app.require_subcommand(1);

    Overrides demo_opts;
    std::string demo_preset;
    int demo_n = 0, demo_m = 0;
    std::string demo_hbar;
    auto* demo = app.add_subcommand("demo", "Run a worked example");
    demo->add_option("preset", demo_preset, "qplane | shiftline | matrix | sphere")
        ->required()
        ->check(CLI::IsMember({"qplane", "shiftline", "matrix", "sphere"}));
    demo->add_option("--n", demo_n, "q-plane exponent n, or matrix size N");
    demo->add_option("--m", demo_m, "q-plane exponent m");
    demo->add_option("--hbar", demo_hbar, "Shift-line step");
    add_common(demo, demo_opts);

    Overrides verify_opts;
    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "Run every check for the configured preset");
    verify->add_option("config", verify_path, "YAML config (relative paths also searched in $TAUGEO_CONFIG_DIR)")
        ->required();
    verify->add_option("--inject", verify_opts.inject, "Corrupt inputs: gamma, table")
        ->check(CLI::IsMember({"gamma", "table"}));
    add_common(verify, verify_opts);

    Overrides report_opts;
    std::string report_path;
    auto* report_cmd = app.add_subcommand("report", "Re-emit a JSON report");
    report_cmd->add_option("input", report_path, "JSON report")->required();
    report_cmd->add_option("--format", report_opts.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->required();
    report_cmd->add_option("--output,-o", report_opts.output, "Write to a file");
    report_cmd->add_flag("--no-timing", report_opts.no_timing, "Omit elapsed_ms from JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*demo) {
            RunConfig cfg;
            cfg.preset = demo_preset;
            cfg.n = demo->count("--n") ? demo_n : (demo_preset == "matrix" ? 2 : 1);
            cfg.m = demo->count("--m") ? demo_m : 1;
            if (demo->count("--hbar")) cfg.hbar = demo_hbar;
            apply(cfg, demo_opts, demo);
            return emit(run_demo(cfg), demo_opts, cfg.output);
        }
        if (*verify) {
            RunConfig cfg = load_config(verify_path);
            apply(cfg, verify_opts, verify);
            return emit(run_verify(cfg), verify_opts, cfg.output);
        }
        Report report = report_from_json(nlohmann::ordered_json::parse(read_file(report_path)));
        report.finalize();
        return emit(report, report_opts, report_opts.output);
    } catch (const taugeo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "report parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
