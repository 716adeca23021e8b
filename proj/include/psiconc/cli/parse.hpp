#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "psiconc/bounds.hpp"
#include "psiconc/diffeo.hpp"
#include "psiconc/montecarlo.hpp"

namespace psiconc::cli {

/// "identity", "log", "logit", "arctan" or "boxcox:<lambda>".
CoordinateTransform parse_transform(std::string_view text);

/// "uniform:a,b", "twopoint:a,b,w", "lognormal:m,s", "gamma:shape,scale",
/// "pareto:alpha,a,b", "beta:alpha,beta".
DistributionSpec parse_distribution(std::string_view text);

/// "sum", "product" or "max".
Statistic parse_statistic(std::string_view text);

/// "identity" or "log".
Coordinate parse_coordinate(std::string_view text);

/// JSON array of square matrices, each an array of rows.
std::vector<Eigen::MatrixXd> parse_matrices(const std::string& json_text);

}  // namespace psiconc::cli
