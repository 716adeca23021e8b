#include "psiconc/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "psiconc/apps.hpp"
#include "psiconc/cli/parse.hpp"
#include "psiconc/errors.hpp"
#include "psiconc/optimize.hpp"
#include "psiconc/transport.hpp"

namespace psiconc::cli {

using nlohmann::json;

namespace {

ReportDocument new_report(std::string command) {
    ReportDocument doc;
    doc.command = std::move(command);
    doc.timestamp = utc_timestamp();
    return doc;
}

json recommendation_json(const CoordinateRecommendation& rec) {
    return {{"choice", to_string(rec.choice)},
            {"normalized_ratio", rec.normalized_ratio},
            {"identity_constant", rec.identity_constant},
            {"log_constant", rec.log_constant},
            {"ratio_prefers_log", rec.ratio_prefers_log},
            {"stated_threshold", rec.stated_threshold}};
}

constexpr const char* kRecommendationFormula =
    "choose log iff b/a > e^2; ratio ((r - 1)/log r)^2 of identity to log Hoeffding constants";

void add_recommendation_warning(ReportDocument& doc, const CoordinateRecommendation& rec) {
    if (rec.choice == Coordinate::Identity && rec.ratio_prefers_log)
        doc.warnings.push_back("b/a is below the e^2 switch-over, so identity is recommended, although the "
                               "identity/log constant ratio " +
                               std::to_string(rec.normalized_ratio) + " already favours log");
}

constexpr const char* kMaxBoundWarning =
    "the max-statistic bound exp(-2 n t^2 / w^2) is not a valid tail bound for every law on [a, b]: "
    "heavy-tailed inputs such as pareto:1,1,1000 with n = 50 exceed it in simulation";

std::vector<double> default_deviations(double sigma_sq) {
    std::vector<double> t;
    for (int k = 0; k <= 8; ++k) t.push_back(0.5 * k * std::sqrt(sigma_sq));
    return t;
}

Coordinate coordinate_of(const CoordinateTransform& t) {
    if (t.as<maps::Identity>()) return Coordinate::Identity;
    if (t.as<maps::Log>()) return Coordinate::Log;
    throw InvalidArgument("this statistic supports only the identity or log transform, got " + t.name());
}

TailBoundReport bound_for(const SupportInterval& iv, std::size_t n_vars, Statistic s, const CoordinateTransform& t) {
    switch (s) {
        case Statistic::Sum: return sum_bound_report(t, iv, n_vars);
        case Statistic::Product: return product_bound_report(iv, n_vars, coordinate_of(t));
        case Statistic::Max: return max_bound_report(iv, n_vars, coordinate_of(t));
    }
    throw InvalidArgument("unknown statistic");
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

double plain_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct PublishedClaim {
    double ratio;
    const char* ratio_label;
    double value;
    const char* value_label;
};

// Published improvement factors for a = 1. A claim is flagged whenever b/a
// matches its ratio; it counts as consistent within 2%.
const PublishedClaim kClaims[] = {
    {std::numbers::e * std::numbers::e, "e^2", 1.0, "1"},
    {100.0, "100", 144.0, "144"},
    {1000.0, "1000", 21000.0, "approximately 21,000"},
};

}  // namespace

ReportDocument cmd_analyze(std::span<const double> data, const std::string& source) {
    if (data.size() < 10)
        throw InsufficientData("need at least 10 rows, got " + std::to_string(data.size()));
    ReportDocument doc = new_report("analyze");
    doc.inputs = {{"source", source}, {"rows", data.size()}};

    const std::vector<EmpiricalMeasure> ms{EmpiricalMeasure(std::vector<double>(data.begin(), data.end()))};
    const auto grid = TransformGrid::default_for(ms);
    const auto sel = select_optimal_transform(ms, grid, Estimator::MgfGrid);

    json cand = {{"transform", json::array()}, {"normalized", json::array()}, {"raw", json::array()},
                 {"refined", json::array()}};
    for (const auto& row : sel.table) {
        cand["transform"].push_back(row.transform.name());
        cand["normalized"].push_back(row.value);
        cand["raw"].push_back(row.raw_value);
        cand["refined"].push_back(row.refined);
    }
    const auto& m = ms.front();
    doc.results["selected_transform"] = sel.best.name();
    doc.results["lambda_hat"] = sel.lambda_hat ? json(*sel.lambda_hat) : json(nullptr);
    doc.results["normalized_value"] = sel.value;
    doc.results["candidates"] = cand;
    doc.results["functional"] = {
        {"mgf", concentration_functional(m, sel.best, Estimator::MgfGrid)},
        {"range", concentration_functional(m, sel.best, Estimator::RangeBased)},
    };
    doc.results["functional_identity"] = {
        {"mgf", concentration_functional(m, CoordinateTransform::identity(), Estimator::MgfGrid)},
        {"range", concentration_functional(m, CoordinateTransform::identity(), Estimator::RangeBased)},
    };
    doc.formulas["coordinate-selection"] =
        "argmin over candidates of sup_mu F[mu, psi] / J(psi)^2, J the geometric-mean Jacobian";
    doc.formulas["mgf-functional"] =
        "F = sup_lambda 2 log E exp(lambda (psi(X) - E psi(X))) / lambda^2 over +-level/sd, levels in [1e-2, 1e2]";
    doc.formulas["range-functional"] = "F = (max psi - min psi)^2 / 4";

    if (m.min() > 0.0 && m.min() < m.max()) {
        const auto rec = recommend_coordinate(SupportInterval(m.min(), m.max()));
        doc.results["recommendation"] = recommendation_json(rec);
        doc.formulas["coordinate-recommendation"] = kRecommendationFormula;
        add_recommendation_warning(doc, rec);
    } else {
        doc.warnings.push_back("no identity/log recommendation: the data are not positive with a non-trivial range");
    }
    return doc;
}

ReportDocument cmd_bound(const SupportInterval& iv, std::size_t n_vars, Statistic statistic,
                         const CoordinateTransform& transform, std::span<const double> t) {
    ReportDocument doc = new_report("bound");
    doc.inputs = {{"a", iv.a()}, {"b", iv.b()}, {"n_vars", n_vars}, {"statistic", to_string(statistic)},
                  {"transform", transform.name()}};
    require_within_domain(transform, iv);
    const auto rep = bound_for(iv, n_vars, statistic, transform);
    std::vector<double> ts(t.begin(), t.end());
    if (ts.empty()) ts = default_deviations(rep.sigma_sq);
    for (double x : ts)
        if (!(x >= 0.0)) throw InvalidArgument("deviations must be non-negative");

    json table = {{"t", json::array()}, {"bound", json::array()}};
    for (double x : ts) {
        table["t"].push_back(x);
        table["bound"].push_back(rep.bound_at(x));
    }
    doc.inputs["t"] = ts;
    doc.results["bound_name"] = rep.name;
    doc.results["sigma_sq"] = rep.sigma_sq;
    doc.results["hoeffding_constant"] = hoeffding_constant(transform, iv);
    doc.results["table"] = table;
    doc.results["assumptions"] = rep.assumptions;
    doc.formulas[rep.name] = rep.formula;
    doc.formulas["hoeffding-constant"] = "(psi(b) - psi(a))^2 / 4";
    if (iv.a() > 0.0) {
        const auto rec = recommend_coordinate(iv);
        doc.results["recommendation"] = recommendation_json(rec);
        doc.results["improvement_factor"] = improvement_factor(iv);
        doc.formulas["coordinate-recommendation"] = kRecommendationFormula;
        doc.formulas["improvement-factor"] = "rho(a, b) = (b - a)^2 / log^2(b/a)";
        add_recommendation_warning(doc, rec);
    }
    if (statistic == Statistic::Max) doc.warnings.push_back(kMaxBoundWarning);
    return doc;
}

ReportDocument cmd_compare(double a, double b) {
    if (!(a > 0.0)) throw InvalidArgument("compare needs 0 < a < b");
    const SupportInterval iv(a, b);
    ReportDocument doc = new_report("compare");
    doc.inputs = {{"a", a}, {"b", b}};

    const auto rec = recommend_coordinate(iv);
    const double rho = improvement_factor(iv);
    doc.results["constants"] = {
        {"coordinate", {"identity", "log"}},
        {"hoeffding_constant", {hoeffding_constant(CoordinateTransform::identity(), iv),
                                hoeffding_constant(CoordinateTransform::log(), iv)}},
    };
    doc.results["improvement_factor"] = rho;
    doc.results["ratio"] = iv.ratio();
    doc.results["recommendation"] = recommendation_json(rec);
    doc.formulas["improvement-factor"] = "rho(a, b) = (b - a)^2 / log^2(b/a)";
    doc.formulas["hoeffding-constant"] = "(psi(b) - psi(a))^2 / 4";
    doc.formulas["coordinate-recommendation"] = kRecommendationFormula;
    add_recommendation_warning(doc, rec);

    const double r = iv.ratio();
    for (const auto& claim : kClaims) {
        if (std::abs(r - claim.ratio) > 1e-6 * claim.ratio) continue;
        const double computed = rec.normalized_ratio;
        const bool consistent = std::abs(computed - claim.value) <= 0.02 * claim.value;
        std::ostringstream msg;
        msg << "published value for b/a = " << claim.ratio_label << ": " << claim.value_label << "; computed "
            << std::setprecision(6) << computed << (consistent ? " (consistent within 2%)" : " (discrepancy)");
        doc.warnings.push_back(msg.str());
        doc.results["published_claim"] = {{"ratio", claim.ratio_label},
                                          {"published", claim.value},
                                          {"computed", computed},
                                          {"consistent", consistent}};
    }
    return doc;
}

ReportDocument cmd_simulate(const DistributionSpec& spec, std::size_t n_vars, Statistic statistic,
                            const CoordinateTransform& transform, std::span<const double> t_grid,
                            std::size_t reps, std::uint64_t seed) {
    ReportDocument doc = new_report("simulate");
    doc.seed = seed;
    std::vector<double> ts(t_grid.begin(), t_grid.end());
    if (ts.empty()) ts = default_t_grid(spec, n_vars, statistic, transform);
    doc.inputs = {{"distribution", spec.name()}, {"n_vars", n_vars},      {"statistic", to_string(statistic)},
                  {"transform", transform.name()}, {"reps", reps},       {"t", ts}};

    const auto res = verify_bound(spec, n_vars, statistic, transform, ts, reps, seed);
    json table = {{"t", res.t_grid},         {"empirical_tail", res.empirical_tail}, {"bound", res.bound},
                  {"std_err", res.std_err}, {"dominated", json::array()}};
    for (bool d : res.dominated) table["dominated"].push_back(d);
    doc.results["table"] = table;
    doc.results["bound_name"] = res.bound_name;
    doc.results["center"] = res.center;
    doc.results["center_std_err"] = res.center_std_err;
    doc.results["mgf_sigma_sq"] = res.mgf_sigma_sq;
    doc.results["bound_sigma_sq"] = res.bound_sigma_sq;
    doc.results["n_reps"] = res.n_reps;
    doc.results["status"] = res.all_dominated() ? "PASS" : "FAIL";
    doc.formulas[res.bound_name] = res.formula;
    doc.formulas["domination"] = "empirical tail <= bound + 3 * std_err at every t";
    if (statistic == Statistic::Max) doc.warnings.push_back(kMaxBoundWarning);
    return doc;
}

ReportDocument cmd_transport(std::span<const double> a, std::span<const double> b,
                             const CoordinateTransform& transform, double p) {
    ReportDocument doc = new_report("transport");
    doc.inputs = {{"transform", transform.name()}, {"p", p}, {"n_a", a.size()}, {"n_b", b.size()}};
    const EmpiricalMeasure mu(std::vector<double>(a.begin(), a.end()));
    const EmpiricalMeasure nu(std::vector<double>(b.begin(), b.end()));
    const double d = psi_wasserstein(mu, nu, transform, p);
    const double pre = psi_wasserstein(push(mu, transform), push(nu, transform), CoordinateTransform::identity(), p);
    doc.results["distance"] = d;
    doc.results["self_check"] = {{"pushed_identity_distance", pre}, {"difference", d - pre}, {"exact", d == pre}};
    doc.formulas["psi-wasserstein"] = "W_p(psi_* mu, psi_* nu) = (int_0^1 |F^-1(u) - G^-1(u)|^p du)^(1/p) in psi-coordinates";
    doc.formulas["pushforward-identity"] = "W_p^psi(mu, nu) = W_p^identity(psi_* mu, psi_* nu)";
    if (d != pre) doc.warnings.push_back("pushforward self-check differs from the direct distance");
    return doc;
}

ReportDocument cmd_regress(const CsvTable& table, const std::string& response, std::vector<std::string> predictors,
                           bool intercept, std::optional<double> t) {
    ReportDocument doc = new_report("apps regress");
    const std::size_t ri = table.column_index(response);
    if (predictors.empty())
        for (std::size_t i = 0; i < table.header.size(); ++i)
            if (i != ri) predictors.push_back(table.header[i]);
    doc.inputs = {{"response", response}, {"predictors", predictors}, {"intercept", intercept},
                  {"rows", table.rows.size()}};

    const auto y_std = table.numeric(ri);
    const auto n = static_cast<Eigen::Index>(y_std.size());
    DesignMatrix x;
    const auto p = static_cast<Eigen::Index>(predictors.size() + (intercept ? 1 : 0));
    x.values.resize(n, p);
    Eigen::Index col = 0;
    if (intercept) {
        x.values.col(col++).setOnes();
        x.labels.push_back("intercept");
    }
    for (const auto& name : predictors) {
        const auto v = table.numeric(name);
        x.values.col(col++) = Eigen::Map<const Eigen::VectorXd>(v.data(), n);
        x.labels.push_back(name);
    }
    const Eigen::Map<const Eigen::VectorXd> y(y_std.data(), n);
    const auto fit = log_linear_fit(x, y);

    json coef = {{"term", x.labels}, {"beta", json::array()}};
    for (Eigen::Index i = 0; i < fit.beta.size(); ++i) coef["beta"].push_back(fit.beta(i));
    doc.results["coefficients"] = coef;
    doc.results["sigma_sq"] = fit.sigma_sq;
    doc.results["lambda_min"] = fit.lambda_min;
    doc.formulas["log-linear-fit"] = "beta = argmin sum (log y_i - <x_i, beta>)^2, sigma^2 with divisor n - p";
    if (t) {
        doc.inputs["t"] = *t;
        if (fit.sigma_sq > 0.0) {
            doc.results["deviation_bound"] = regression_deviation_bound(
                static_cast<std::size_t>(p), static_cast<std::size_t>(n), fit.lambda_min, fit.sigma_sq, *t);
            doc.formulas["regression-deviation"] = "P(|beta_hat_j - beta_j| >= t) <= min(1, 2p exp(-n t^2 lambda_min / (2 sigma^2)))";
        } else {
            doc.warnings.push_back("residual variance is zero; deviation bound not evaluated");
        }
    }
    return doc;
}

ReportDocument cmd_portfolio(double delta, std::size_t n, double t, std::optional<double> sigma_log_sq) {
    ReportDocument doc = new_report("apps portfolio");
    doc.inputs = {{"delta", delta}, {"n", n}, {"t", t}};
    if (sigma_log_sq) doc.inputs["sigma_log_sq"] = *sigma_log_sq;
    const auto pb = portfolio_bound(delta, n, t, sigma_log_sq);
    doc.results["sigma_cap"] = pb.sigma_cap;
    doc.results["sigma_used"] = pb.sigma_used;
    doc.results["bound"] = pb.bound;
    doc.formulas["portfolio-log-return"] = "P(|normalized log return - mean| >= t) <= min(1, exp(-t^2 / (2 sigma_log^2)))";
    doc.formulas["log-return-variance-cap"] = "sigma_log^2 <= delta^2 / (1 - delta)^2";
    return doc;
}

ReportDocument cmd_covgeo(const std::vector<Eigen::MatrixXd>& mats, const CovBoundOptions& opts) {
    ReportDocument doc = new_report("apps covgeo");
    std::vector<SpdMatrix> spd;
    for (const auto& m : mats) spd.emplace_back(m);
    if (spd.empty()) throw InvalidArgument("no matrices supplied");
    const auto mean = geometric_mean_covariance(spd);
    doc.inputs = {{"count", spd.size()}, {"dim", mean.dim()}};
    doc.results["geometric_mean"] = matrix_json(mean.matrix());
    doc.results["eigenvalue_range"] = {mean.min_eigenvalue(), mean.max_eigenvalue()};
    doc.formulas["geometric-mean-covariance"] = "exp((1/n) sum_i log Sigma_i) by Jacobi eigendecomposition";

    if (opts.t) {
        double a = opts.a.value_or(spd.front().min_eigenvalue());
        double b = opts.b.value_or(spd.front().max_eigenvalue());
        for (const auto& s : spd) {
            if (!opts.a) a = std::min(a, s.min_eigenvalue());
            if (!opts.b) b = std::max(b, s.max_eigenvalue());
        }
        const std::size_t n = opts.n.value_or(spd.size());
        doc.inputs["bound"] = {{"a", a}, {"b", b}, {"n", n}, {"t", *opts.t}};
        if (a < b) {
            doc.results["deviation_bound"] =
                covariance_deviation_bound(n, static_cast<std::size_t>(mean.dim()), a, b, *opts.t);
            doc.formulas["covariance-deviation"] = "min(1, 2 d^2 exp(-n t^2 / (2 d log^2(b/a))))";
        } else {
            doc.warnings.push_back("all eigenvalues coincide; deviation bound not evaluated");
        }
    }
    return doc;
}

ReportDocument cmd_median(std::span<const double> data, const CoordinateTransform& transform) {
    ReportDocument doc = new_report("apps median");
    doc.inputs = {{"rows", data.size()}, {"transform", transform.name()}};
    std::vector<double> v(data.begin(), data.end());
    if (v.empty()) throw EmptySample("psi-median of an empty sample");
    doc.results["psi_median"] = psi_median(EmpiricalMeasure(v), transform);
    doc.results["plain_median"] = plain_median(v);
    doc.formulas["psi-median"] = "psi^-1(median(psi(X_1), ..., psi(X_n))), midpoint of the middle pair for even n";
    return doc;
}

int exit_code(const ReportDocument& doc) {
    const auto it = doc.results.find("status");
    if (it != doc.results.end() && it->is_string() && it->get<std::string>() == "FAIL") return kBoundFailure;
    return kOk;
}

namespace {

std::vector<double> column_of(const std::string& path, const std::string& column) {
    const auto table = read_csv_file(path);
    return column.empty() ? table.numeric(std::size_t{0}) : table.numeric(column);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Concentration bounds under coordinate transforms", "psiconc"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 42;
    std::size_t reps = 100000;
    std::string out_path;
    std::string format = "json";
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--reps", reps, "Monte Carlo replications")->capture_default_str();
    app.add_option("--out", out_path, "Write the report to this file instead of stdout");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();

    std::function<ReportDocument()> action;

    // analyze
    std::string an_file, an_column;
    auto* analyze = app.add_subcommand("analyze", "Select a concentration coordinate for a data column");
    analyze->add_option("file", an_file, "CSV file with a header row")->required();
    analyze->add_option("--column", an_column, "Column name (default: first column)");
    analyze->callback([&] {
        action = [&] { return cmd_analyze(column_of(an_file, an_column), an_file); };
    });

    // bound
    double bd_a = 0.0, bd_b = 0.0;
    std::size_t bd_n = 1;
    std::string bd_stat = "sum", bd_transform = "identity";
    std::vector<double> bd_t;
    auto* bound = app.add_subcommand("bound", "Tail bound for a statistic of bounded variables");
    bound->add_option("a", bd_a, "Lower support end")->required();
    bound->add_option("b", bd_b, "Upper support end")->required();
    bound->add_option("--n-vars", bd_n, "Number of variables")->capture_default_str();
    bound->add_option("--statistic", bd_stat, "sum, product or max")->capture_default_str();
    bound->add_option("--transform", bd_transform, "identity, log, logit, arctan or boxcox:<lambda>")
        ->capture_default_str();
    bound->add_option("--t", bd_t, "Comma-separated deviations")->delimiter(',');
    bound->callback([&] {
        action = [&] {
            return cmd_bound(SupportInterval(bd_a, bd_b), bd_n, parse_statistic(bd_stat), parse_transform(bd_transform),
                             bd_t);
        };
    });

    // compare
    double cmp_a = 0.0, cmp_b = 0.0;
    auto* compare = app.add_subcommand("compare", "Identity against log Hoeffding constants on [a, b]");
    compare->add_option("a", cmp_a, "Lower support end")->required();
    compare->add_option("b", cmp_b, "Upper support end")->required();
    compare->callback([&] { action = [&] { return cmd_compare(cmp_a, cmp_b); }; });

    // simulate
    std::string sim_dist, sim_stat = "sum", sim_transform = "identity";
    std::size_t sim_n = 50;
    std::vector<double> sim_t;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo check that a tail bound dominates");
    simulate->add_option("--dist", sim_dist, "e.g. uniform:1,1000, twopoint:1,1000,0.5, pareto:1,1,1000")->required();
    simulate->add_option("--statistic", sim_stat, "sum, product or max")->capture_default_str();
    simulate->add_option("--transform", sim_transform, "Coordinate of the statistic")->capture_default_str();
    simulate->add_option("--n-vars", sim_n, "Variables per replication")->capture_default_str();
    simulate->add_option("--t", sim_t, "Comma-separated deviations")->delimiter(',');
    simulate->callback([&] {
        action = [&] {
            return cmd_simulate(parse_distribution(sim_dist), sim_n, parse_statistic(sim_stat),
                                parse_transform(sim_transform), sim_t, reps, seed);
        };
    });

    // transport
    std::string tr_a, tr_b, tr_column, tr_transform = "identity";
    double tr_p = 1.0;
    auto* transport = app.add_subcommand("transport", "Wasserstein distance between two samples in psi-coordinates");
    transport->add_option("file_a", tr_a, "First CSV file")->required();
    transport->add_option("file_b", tr_b, "Second CSV file")->required();
    transport->add_option("--column", tr_column, "Column name in both files (default: first column)");
    transport->add_option("--transform", tr_transform, "Coordinate transform")->capture_default_str();
    transport->add_option("--p", tr_p, "Order p >= 1")->capture_default_str();
    transport->callback([&] {
        action = [&] {
            return cmd_transport(column_of(tr_a, tr_column), column_of(tr_b, tr_column), parse_transform(tr_transform),
                                 tr_p);
        };
    });

    auto* apps = app.add_subcommand("apps", "Applications");
    apps->require_subcommand(1);

    std::string rg_file, rg_response;
    std::vector<std::string> rg_predictors;
    bool rg_no_intercept = false;
    std::optional<double> rg_t;
    auto* regress = apps->add_subcommand("regress", "Log-linear regression of a positive response");
    regress->add_option("file", rg_file, "CSV file")->required();
    regress->add_option("--response", rg_response, "Response column")->required();
    regress->add_option("--predictors", rg_predictors, "Comma-separated predictor columns (default: all others)")
        ->delimiter(',');
    regress->add_flag("--no-intercept", rg_no_intercept, "Omit the intercept column");
    regress->add_option("--t", rg_t, "Deviation for the coefficient bound");
    regress->callback([&] {
        action = [&] {
            return cmd_regress(read_csv_file(rg_file), rg_response, rg_predictors, !rg_no_intercept, rg_t);
        };
    });

    double pf_delta = 0.0, pf_t = 0.0;
    std::size_t pf_n = 1;
    std::optional<double> pf_sigma;
    auto* portfolio = apps->add_subcommand("portfolio", "Log-return deviation bound for bounded per-period returns");
    portfolio->add_option("--delta", pf_delta, "Per-period returns lie in [1 - delta, 1 + delta]")->required();
    portfolio->add_option("--n", pf_n, "Number of periods")->capture_default_str();
    portfolio->add_option("--t", pf_t, "Deviation")->capture_default_str();
    portfolio->add_option("--sigma-sq", pf_sigma, "Log-return variance (default: the cap)");
    portfolio->callback([&] { action = [&] { return cmd_portfolio(pf_delta, pf_n, pf_t, pf_sigma); }; });

    std::string cg_file;
    CovBoundOptions cg_opts;
    auto* covgeo = apps->add_subcommand("covgeo", "Geometric mean of SPD matrices");
    covgeo->add_option("file", cg_file, "JSON array of square matrices")->required();
    covgeo->add_option("--a", cg_opts.a, "Lower eigenvalue bound");
    covgeo->add_option("--b", cg_opts.b, "Upper eigenvalue bound");
    covgeo->add_option("--n", cg_opts.n, "Sample count for the deviation bound");
    covgeo->add_option("--t", cg_opts.t, "Deviation for the bound");
    covgeo->callback([&] { action = [&] { return cmd_covgeo(parse_matrices(slurp(cg_file)), cg_opts); }; });

    std::string md_file, md_column, md_transform = "log";
    auto* median = apps->add_subcommand("median", "psi-median of a data column");
    median->add_option("file", md_file, "CSV file")->required();
    median->add_option("--column", md_column, "Column name (default: first column)");
    median->add_option("--transform", md_transform, "Coordinate transform")->capture_default_str();
    median->callback([&] {
        action = [&] { return cmd_median(column_of(md_file, md_column), parse_transform(md_transform)); };
    });

    for (auto* sub : {analyze, bound, compare, simulate, transport, apps, regress, portfolio, covgeo, median})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kInputError;
    }

    try {
        if (!action) throw InvalidArgument("no command given");
        const ReportDocument doc = action();
        const std::string text = format == "table" ? render_table(doc) : render_json(doc);
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw ParseError("cannot write '" + out_path + "'");
            f << text;
        }
        return exit_code(doc);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    }
}

}  // namespace psiconc::cli
