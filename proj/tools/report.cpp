#include "report.hpp"

#include "taugeo/error.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace taugeo::cli {

void Report::finalize() {
    std::sort(checks.begin(), checks.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    for (std::size_t i = 1; i < checks.size(); ++i)
        if (checks[i].name == checks[i - 1].name) throw Error("duplicate check name " + checks[i].name);
    summary = {};
    for (const auto& c : checks) {
        if (c.status == "pass") ++summary.pass;
        else if (c.status == "fail") ++summary.fail;
        else ++summary.skipped;
    }
}

nlohmann::ordered_json to_json(const Report& report, bool timing) {
    nlohmann::ordered_json j;
    j["version"] = report.version;
    j["config"] = report.config;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json r;
        r["name"] = c.name;
        r["anchor"] = c.anchor;
        r["status"] = c.status;
        r["witness"] = c.witness;
        r["cases"] = c.cases;
        if (timing) r["elapsed_ms"] = c.elapsed_ms;
        checks.push_back(std::move(r));
    }
    j["checks"] = std::move(checks);
    j["summary"] = {{"pass", report.summary.pass}, {"fail", report.summary.fail}, {"skipped", report.summary.skipped}};
    return j;
}

Report report_from_json(const nlohmann::ordered_json& j) {
    static const std::set<std::string> statuses{"pass", "fail", "skipped"};
    try {
        Report out;
        out.version = j.at("version").get<std::string>();
        out.config = j.at("config");
        for (const auto& r : j.at("checks")) {
            CheckRecord c;
            c.name = r.at("name").get<std::string>();
            c.anchor = r.at("anchor").get<std::string>();
            c.status = r.at("status").get<std::string>();
            if (!statuses.count(c.status)) throw ConfigError("check " + c.name + " has unknown status " + c.status);
            c.witness = r.at("witness").get<std::string>();
            c.cases = r.at("cases").get<std::size_t>();
            if (r.contains("elapsed_ms")) c.elapsed_ms = r.at("elapsed_ms").get<double>();
            out.checks.push_back(std::move(c));
        }
        const auto& s = j.at("summary");
        out.summary = {s.at("pass").get<std::size_t>(), s.at("fail").get<std::size_t>(),
                       s.at("skipped").get<std::size_t>()};
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
}

std::string render_text(const Report& report) {
    std::ostringstream out;
    out << "taugeo report v" << report.version << "\n";
    if (report.config.contains("preset")) out << "preset: " << report.config["preset"].get<std::string>() << "\n";
    if (report.config.contains("seed")) out << "seed: " << report.config["seed"].dump() << "\n";
    for (const auto& line : report.notes) out << line << "\n";
    for (const auto& c : report.checks) {
        out << "[" << c.status << "] " << c.name << " (" << c.cases << " cases)  " << c.anchor << "\n";
        if (!c.witness.empty()) out << "    " << (c.status == "skipped" ? "note: " : "witness: ") << c.witness << "\n";
    }
    out << "summary: " << report.summary.pass << " pass, " << report.summary.fail << " fail, "
        << report.summary.skipped << " skipped\n";
    return out.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(path + ": cannot open for writing");
    out << content;
    if (!out) throw Error(path + ": write failed");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace taugeo::cli
