#include "psiconc/cli/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "psiconc/errors.hpp"

namespace psiconc::cli {

using nlohmann::json;

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json to_json(const ReportDocument& doc) {
    json j;
    j["command"] = doc.command;
    j["version"] = doc.version;
    j["seed"] = doc.seed ? json(*doc.seed) : json(nullptr);
    j["timestamp"] = doc.timestamp;
    j["inputs"] = doc.inputs;
    j["results"] = doc.results;
    j["warnings"] = doc.warnings;
    j["formulas"] = doc.formulas;
    return j;
}

ReportDocument report_from_json(const json& j) {
    try {
        ReportDocument doc;
        doc.command = j.at("command").get<std::string>();
        doc.version = j.at("version").get<std::string>();
        if (!j.at("seed").is_null()) doc.seed = j.at("seed").get<std::uint64_t>();
        doc.timestamp = j.at("timestamp").get<std::string>();
        doc.inputs = j.at("inputs");
        doc.results = j.at("results");
        doc.warnings = j.at("warnings").get<std::vector<std::string>>();
        doc.formulas = j.at("formulas");
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

std::string render_json(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

ReportDocument parse_report(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
    return report_from_json(j);
}

namespace {

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(6) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

// An object whose members are arrays of one common length, rendered as columns.
bool is_columnar(const json& v) {
    if (!v.is_object() || v.empty()) return false;
    std::size_t len = 0;
    bool first = true;
    for (const auto& [k, col] : v.items()) {
        if (!col.is_array() || col.empty()) return false;
        for (const auto& x : col)
            if (x.is_structured()) return false;
        if (first) len = col.size();
        else if (col.size() != len) return false;
        first = false;
    }
    return true;
}

void write_columns(std::ostream& os, const json& v, const std::string& indent) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> cols;
    for (const auto& [k, col] : v.items()) {
        names.push_back(k);
        auto& c = cols.emplace_back();
        for (const auto& x : col) c.push_back(cell(x));
    }
    std::vector<std::size_t> width(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        width[i] = names[i].size();
        for (const auto& s : cols[i]) width[i] = std::max(width[i], s.size());
    }
    os << indent;
    for (std::size_t i = 0; i < names.size(); ++i) os << std::setw(static_cast<int>(width[i]) + 2) << names[i];
    os << '\n';
    for (std::size_t r = 0; r < cols.front().size(); ++r) {
        os << indent;
        for (std::size_t i = 0; i < names.size(); ++i)
            os << std::setw(static_cast<int>(width[i]) + 2) << cols[i][r];
        os << '\n';
    }
}

void write_value(std::ostream& os, const std::string& key, const json& v, const std::string& indent) {
    if (is_columnar(v)) {
        os << indent << key << ":\n";
        write_columns(os, v, indent + "  ");
    } else if (v.is_object()) {
        os << indent << key << ":\n";
        for (const auto& [k, x] : v.items()) write_value(os, k, x, indent + "  ");
    } else {
        os << indent << key << ": " << cell(v) << '\n';
    }
}

}  // namespace

std::string render_table(const ReportDocument& doc) {
    std::ostringstream os;
    os << doc.command << " (version " << doc.version;
    if (doc.seed) os << ", seed " << *doc.seed;
    os << ", " << doc.timestamp << ")\n";
    os << "inputs:\n";
    for (const auto& [k, v] : doc.inputs.items()) write_value(os, k, v, "  ");
    os << "results:\n";
    for (const auto& [k, v] : doc.results.items()) write_value(os, k, v, "  ");
    if (!doc.formulas.empty()) {
        os << "formulas:\n";
        for (const auto& [k, v] : doc.formulas.items()) os << "  [" << k << "] " << cell(v) << '\n';
    }
    if (!doc.warnings.empty()) {
        os << "warnings:\n";
        for (const auto& w : doc.warnings) os << "  - " << w << '\n';
    }
    return os.str();
}

}  // namespace psiconc::cli
