#include "psiconc/cli/parse.hpp"

#include <json.hpp>

#include "psiconc/cli/csv.hpp"
#include "psiconc/errors.hpp"

namespace psiconc::cli {
namespace {

std::vector<double> numbers(std::string_view list, std::string_view what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string_view item = list.substr(start, comma == std::string_view::npos ? list.npos : comma - start);
        double v = 0.0;
        if (!parse_double(item, v))
            throw ParseError("bad number '" + std::string(item) + "' in " + std::string(what));
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void expect_count(const std::vector<double>& v, std::size_t n, std::string_view what) {
    if (v.size() != n)
        throw ParseError(std::string(what) + " takes " + std::to_string(n) + " parameters, got " +
                         std::to_string(v.size()));
}

}  // namespace

CoordinateTransform parse_transform(std::string_view text) {
    if (text == "identity") return CoordinateTransform::identity();
    if (text == "log") return CoordinateTransform::log();
    if (text == "logit") return CoordinateTransform::logit();
    if (text == "arctan") return CoordinateTransform::arctan();
    if (text.starts_with("boxcox:")) {
        const auto v = numbers(text.substr(7), "boxcox");
        expect_count(v, 1, "boxcox");
        return CoordinateTransform::box_cox(v[0]);
    }
    throw ParseError("unknown transform '" + std::string(text) +
                     "' (expected identity, log, logit, arctan or boxcox:<lambda>)");
}

DistributionSpec parse_distribution(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("distribution must look like name:p1,p2,... (got '" + std::string(text) + "')");
    const std::string_view name = text.substr(0, colon);
    const auto p = numbers(text.substr(colon + 1), name);
    if (name == "uniform") {
        expect_count(p, 2, name);
        return DistributionSpec(dist::Uniform{p[0], p[1]});
    }
    if (name == "twopoint") {
        expect_count(p, 3, name);
        return DistributionSpec(dist::TwoPoint{p[0], p[1], p[2]});
    }
    if (name == "lognormal") {
        expect_count(p, 2, name);
        return DistributionSpec(dist::LogNormal{p[0], p[1]});
    }
    if (name == "gamma") {
        expect_count(p, 2, name);
        return DistributionSpec(dist::Gamma{p[0], p[1]});
    }
    if (name == "pareto") {
        expect_count(p, 3, name);
        return DistributionSpec(dist::ParetoTruncated{p[0], p[1], p[2]});
    }
    if (name == "beta") {
        expect_count(p, 2, name);
        return DistributionSpec(dist::Beta{p[0], p[1]});
    }
    throw UnknownFamily("unknown distribution '" + std::string(name) + "'");
}

Statistic parse_statistic(std::string_view text) {
    if (text == "sum") return Statistic::Sum;
    if (text == "product") return Statistic::Product;
    if (text == "max") return Statistic::Max;
    throw ParseError("unknown statistic '" + std::string(text) + "' (expected sum, product or max)");
}

Coordinate parse_coordinate(std::string_view text) {
    if (text == "identity") return Coordinate::Identity;
    if (text == "log") return Coordinate::Log;
    throw ParseError("unknown coordinate '" + std::string(text) + "' (expected identity or log)");
}

std::vector<Eigen::MatrixXd> parse_matrices(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed matrix file: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("matrix file must hold an array of matrices");
    std::vector<Eigen::MatrixXd> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& m = j[k];
        if (!m.is_array() || m.empty()) throw ParseError("matrix " + std::to_string(k) + " is not a non-empty array");
        const auto rows = static_cast<Eigen::Index>(m.size());
        Eigen::MatrixXd mat(rows, rows);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const auto& row = m[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
                throw DimensionMismatch("matrix " + std::to_string(k) + " is not square");
            for (Eigen::Index c = 0; c < rows; ++c) {
                const auto& x = row[static_cast<std::size_t>(c)];
                if (!x.is_number()) throw ParseError("matrix " + std::to_string(k) + " has a non-numeric entry");
                mat(r, c) = x.get<double>();
            }
        }
        out.push_back(std::move(mat));
    }
    return out;
}

}  // namespace psiconc::cli
