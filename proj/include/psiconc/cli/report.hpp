#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace psiconc::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Output of one CLI command. Objects serialize with sorted keys, so equal
/// documents produce identical bytes.
struct ReportDocument {
    std::string command;
    std::string version = kVersion;
    std::optional<std::uint64_t> seed;
    /// UTC, ISO 8601.
    std::string timestamp;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::string> warnings;
    /// Formula tag -> formula text, for every bound or estimator used.
    nlohmann::json formulas = nlohmann::json::object();

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

/// Current UTC time, e.g. "2026-01-31T12:00:00Z".
std::string utc_timestamp();

nlohmann::json to_json(const ReportDocument& doc);
/// Throws ParseError on missing or mistyped fields.
ReportDocument report_from_json(const nlohmann::json& j);

/// Two-space indented JSON with a trailing newline.
std::string render_json(const ReportDocument& doc);
/// Throws ParseError on malformed text.
ReportDocument parse_report(const std::string& text);

/// Plain-text rendering: metadata, inputs, results (objects of equal-length
/// arrays become aligned tables), formulas and warnings.
std::string render_table(const ReportDocument& doc);

}  // namespace psiconc::cli
