#include "psiconc/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "psiconc/errors.hpp"

namespace psiconc::cli {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && trim(cur).empty()) {
            cur.clear();
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError("unterminated quote on line " + std::to_string(line_no), line_no);
    fields.emplace_back(trim(cur));
    return fields;
}

}  // namespace

bool parse_double(std::string_view cell, double& out) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return false;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size() && std::isfinite(out);
}

std::size_t CsvTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ParseError("no column named '" + std::string(name) + "'", 1);
}

std::vector<double> CsvTable::numeric(std::size_t column) const {
    if (column >= header.size()) throw ParseError("column index out of range", 1);
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string& cell = rows[r][column];
        double v = 0.0;
        if (cell.empty())
            throw ParseError("missing value in column '" + header[column] + "' on line " + std::to_string(lines[r]),
                             lines[r]);
        if (!parse_double(cell, v))
            throw ParseError("non-numeric value '" + cell + "' in column '" + header[column] + "' on line " +
                                 std::to_string(lines[r]),
                             lines[r]);
        out.push_back(v);
    }
    return out;
}

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_line(line, line_no);
        if (!have_header) {
            if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
                fields = split_line(std::string_view(line).substr(3), line_no);
            t.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != t.header.size())
            throw ParseError("line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                                 " fields, header has " + std::to_string(t.header.size()),
                             line_no);
        t.rows.push_back(std::move(fields));
        t.lines.push_back(line_no);
    }
    if (!have_header) throw ParseError("empty input: a header row is required", 0);
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return read_csv(in);
}

}  // namespace psiconc::cli
