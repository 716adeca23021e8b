#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psiconc/bounds.hpp"
#include "psiconc/cli/csv.hpp"
#include "psiconc/cli/report.hpp"
#include "psiconc/diffeo.hpp"
#include "psiconc/montecarlo.hpp"

namespace psiconc::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kOk = 0, kInputError = 1, kBoundFailure = 2, kNumericFailure = 3 };

/// Coordinate selection on one data column. Throws InsufficientData below 10 rows.
ReportDocument cmd_analyze(std::span<const double> data, const std::string& source);

/// Tail bound of a statistic of n_vars variables on [a, b] at deviations t
/// (default: 0, 0.5, ..., 4 times the bound's sigma).
ReportDocument cmd_bound(const SupportInterval& iv, std::size_t n_vars, Statistic statistic,
                         const CoordinateTransform& transform, std::span<const double> t);

/// Identity against log Hoeffding constants on [a, b], with published-value flags.
ReportDocument cmd_compare(double a, double b);

/// Monte Carlo domination check. results.status is "PASS" or "FAIL".
ReportDocument cmd_simulate(const DistributionSpec& spec, std::size_t n_vars, Statistic statistic,
                            const CoordinateTransform& transform, std::span<const double> t_grid,
                            std::size_t reps, std::uint64_t seed);

/// W_p between two samples in psi-coordinates, with the pushforward self-check.
ReportDocument cmd_transport(std::span<const double> a, std::span<const double> b,
                             const CoordinateTransform& transform, double p);

/// Log-linear regression of `response` on `predictors` (all other columns
/// when empty), with an optional intercept and deviation bound at t.
ReportDocument cmd_regress(const CsvTable& table, const std::string& response,
                           std::vector<std::string> predictors, bool intercept, std::optional<double> t);

ReportDocument cmd_portfolio(double delta, std::size_t n, double t, std::optional<double> sigma_log_sq);

struct CovBoundOptions {
    /// Eigenvalue bounds; default to the extreme eigenvalues of the inputs.
    std::optional<double> a, b;
    /// Sample count; defaults to the number of matrices.
    std::optional<std::size_t> n;
    std::optional<double> t;
};

ReportDocument cmd_covgeo(const std::vector<Eigen::MatrixXd>& mats, const CovBoundOptions& opts);

ReportDocument cmd_median(std::span<const double> data, const CoordinateTransform& transform);

/// Exit status a finished report maps to.
int exit_code(const ReportDocument& doc);

/// Full command-line entry point. Reports go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psiconc::cli
