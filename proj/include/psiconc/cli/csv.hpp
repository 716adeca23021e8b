#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace psiconc::cli {

/// Header plus rows of raw cells. `lines[i]` is the 1-based file line of row i.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;

    /// Index of a header name. Throws ParseError when absent.
    std::size_t column_index(std::string_view name) const;

    /// Cells of one column as doubles. Empty or non-numeric cells throw
    /// ParseError carrying the line number.
    std::vector<double> numeric(std::size_t column) const;
    std::vector<double> numeric(std::string_view name) const { return numeric(column_index(name)); }
};

/// Comma-separated with a required header row; double quotes may wrap a
/// field. Blank lines are skipped. Rows with a different field count than
/// the header throw ParseError.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Parses a whole cell as a finite double ('.' decimal separator).
bool parse_double(std::string_view cell, double& out);

}  // namespace psiconc::cli
