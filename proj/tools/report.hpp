#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace taugeo::cli {

inline constexpr const char* kReportVersion = "1";

struct CheckRecord {
    std::string name;
    /// The identity being checked, as a formula.
    std::string anchor;
    /// "pass", "fail" or "skipped".
    std::string status;
    std::string witness;
    std::size_t cases = 0;
    double elapsed_ms = 0.0;

    friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct Summary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t skipped = 0;

    friend bool operator==(const Summary&, const Summary&) = default;
};

struct Report {
    std::string version = kReportVersion;
    nlohmann::ordered_json config;
    std::vector<CheckRecord> checks;
    Summary summary;
    /// Free-form lines printed by demos; not part of the JSON schema.
    std::vector<std::string> notes;

    /// Sorts checks by name and recomputes the tallies. Throws on duplicate names.
    void finalize();
    bool any_failed() const { return summary.fail > 0; }

    friend bool operator==(const Report& a, const Report& b) {
        return a.version == b.version && a.config == b.config && a.checks == b.checks && a.summary == b.summary;
    }
};

/// With timing = false the elapsed_ms fields are dropped, which makes runs with
/// the same config byte-identical.
nlohmann::ordered_json to_json(const Report& report, bool timing = true);
/// Throws ConfigError on schema violations.
Report report_from_json(const nlohmann::ordered_json& j);
std::string render_text(const Report& report);

/// Writes to path, or stdout when path is empty or "-". Throws Error naming the path.
void write_output(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace taugeo::cli
