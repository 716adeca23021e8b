// Acceptance suite: one PASS/FAIL line per criterion, with measured values and
// runtime. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psiconc/apps.hpp"
#include "psiconc/bounds.hpp"
#include "psiconc/cli/commands.hpp"
#include "psiconc/diffeo.hpp"
#include "psiconc/montecarlo.hpp"
#include "psiconc/normal.hpp"
#include "psiconc/optimize.hpp"
#include "psiconc/random.hpp"
#include "psiconc/transport.hpp"

using namespace psiconc;
using CT = CoordinateTransform;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit_s;
    std::function<Outcome()> check;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(8);
    os << v;
    return os.str();
}

bool has_warning(const cli::ReportDocument& doc, const std::string& needle) {
    return std::any_of(doc.warnings.begin(), doc.warnings.end(),
                       [&](const std::string& w) { return w.find(needle) != std::string::npos; });
}

Outcome improvement_factor_claims() {
    const auto thousand = cli::cmd_compare(1.0, 1000.0);
    const auto hundred = cli::cmd_compare(1.0, 100.0);
    const double r1000 = thousand.results["improvement_factor"].get<double>();
    const double r100 = hundred.results["improvement_factor"].get<double>();
    const bool ok = std::abs(r1000 / 20915.0 - 1.0) <= 0.01 && has_warning(thousand, "approximately 21,000") &&
                    std::abs(r100 / 462.2 - 1.0) <= 0.001 && has_warning(hundred, ": 144;");
    return {ok, "rho(1,1000)=" + fmt(r1000) + " rho(1,100)=" + fmt(r100) + " (published-value flags present: " +
                    (has_warning(thousand, "21,000") && has_warning(hundred, "144") ? "yes" : "no") + ")"};
}

Outcome portfolio_cap() {
    const double cap = portfolio_bound(0.1, 1, 0.0, std::nullopt).sigma_cap;
    const double three_sig = std::round(cap * 1e4) / 1e4;
    const bool ok = std::abs(cap - 0.0123457) <= 5e-8 && std::abs(three_sig - 0.0123) < 1e-12;
    return {ok, "sigma_cap=" + fmt(cap)};
}

Outcome bound_domination() {
    const std::vector<DistributionSpec> specs = {DistributionSpec(dist::Uniform{1.0, 1000.0}),
                                                 DistributionSpec(dist::TwoPoint{1.0, 1000.0, 0.5}),
                                                 DistributionSpec(dist::ParetoTruncated{1.0, 1.0, 1000.0})};
    const std::vector<std::pair<Statistic, CT>> stats = {
        {Statistic::Sum, CT::identity()}, {Statistic::Product, CT::log()}, {Statistic::Max, CT::log()}};
    constexpr std::size_t kVars = 50, kReps = 100000;
    int failures = 0, runs = 0;
    std::string detail;
    for (const auto& spec : specs) {
        for (const auto& [stat, tr] : stats) {
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                const auto grid = default_t_grid(spec, kVars, stat, tr);
                const auto r = verify_bound(spec, kVars, stat, tr, grid, kReps, seed);
                ++runs;
                if (r.all_dominated()) continue;
                ++failures;
                if (seed > 1) continue;
                // Report the worst grid point of the first failing seed.
                std::size_t worst = 0;
                double excess = -1.0;
                for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
                    const double e = r.empirical_tail[i] - r.bound[i] - 3.0 * r.std_err[i];
                    if (e > excess) {
                        excess = e;
                        worst = i;
                    }
                }
                detail += " " + spec.name() + " " + r.statistic + ": t=" + fmt(r.t_grid[worst]) +
                          " tail=" + fmt(r.empirical_tail[worst]) + " bound=" + fmt(r.bound[worst]) + ";";
            }
        }
    }
    return {failures == 0, std::to_string(runs - failures) + "/" + std::to_string(runs) + " runs dominated" +
                               (detail.empty() ? "" : "; failing:" + detail)};
}

Outcome rademacher_extremality() {
    bool ok = true;
    std::string detail;
    for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{1.0, 10.0}}) {
        const double target = (b - a) * (b - a) / 4.0;
        const auto two = sample(DistributionSpec(dist::TwoPoint{a, b, 0.5}), 100000, 1);
        const auto uni = sample(DistributionSpec(dist::Uniform{a, b}), 100000, 1);
        const double s_two = concentration_functional(two, CT::identity(), Estimator::MgfGrid);
        const double s_uni = concentration_functional(uni, CT::identity(), Estimator::MgfGrid);
        ok = ok && std::abs(s_two / target - 1.0) <= 0.05 && s_uni < s_two;
        detail += "[" + fmt(a) + "," + fmt(b) + "] two-point/target=" + fmt(s_two / target) +
                  " uniform/target=" + fmt(s_uni / target) + " ";
    }
    return {ok, detail};
}

std::vector<EmpiricalMeasure> identity_measures() {
    return {EmpiricalMeasure({1.0, 2.0}),
            EmpiricalMeasure({0.5, 0.7, 3.0, 9.0}, {0.1, 0.2, 0.3, 0.4}),
            sample(DistributionSpec(dist::LogNormal{0.0, 1.0}), 400, 3),
            sample(DistributionSpec(dist::Uniform{1.0, 1000.0}), 300, 4),
            sample(DistributionSpec(dist::Gamma{2.0, 1.5}), 250, 5)};
}

Outcome structural_identities() {
    const auto ms = identity_measures();
    const std::vector<std::pair<CT, CT>> pairs = {
        {CT::log(), CT::affine(1.0, 1.0, CT::box_cox(2.0))},
        {CT::arctan(), CT::log()},
        {CT::box_cox(0.5), CT::identity()},
        {CT::affine(3.0, -1.0, CT::identity()), CT::log()},
        {CT::identity(), CT::arctan()},
        {CT::box_cox(-1.0), CT::affine(1.0, 3.0, CT::box_cox(0.5))},
        {CT::arctan(), CT::box_cox(-0.5)},
        {CT::log(), CT::affine(1.0, 1.0, CT::box_cox(3.0))},
        {CT::affine(-0.5, 2.0, CT::identity()), CT::box_cox(1.5)},
        {CT::logit(), CT::affine(1.0 / std::numbers::pi, 0.5, CT::arctan())},
    };
    int cases = 0, exact = 0, affine_ok = 0, affine_cases = 0;
    double worst_affine = 0.0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto& m = ms[i];
        const auto& other = ms[(i + 1) % ms.size()];
        for (const auto& [outer, inner] : pairs) {
            ++cases;
            bool ok = true;
            const auto c = compose(outer, inner);
            const auto pushed = push(m, inner);
            for (auto est : {Estimator::RangeBased, Estimator::MgfGrid})
                ok = ok && concentration_functional(m, c, est) == concentration_functional(pushed, outer, est);
            for (double p : {1.0, 2.0})
                ok = ok && psi_wasserstein(m, other, c, p) ==
                               psi_wasserstein(push(m, c), push(other, c), CT::identity(), p);
            exact += ok;

            for (double alpha : {-2.5, 0.01, 40.0}) {
                const auto scaled = CT::affine(alpha, 1.25, c);
                for (auto est : {Estimator::RangeBased, Estimator::MgfGrid}) {
                    const double base = concentration_functional(m, c, est);
                    const double rel = std::abs(concentration_functional(m, scaled, est) / (alpha * alpha * base) - 1.0);
                    worst_affine = std::max(worst_affine, rel);
                    ++affine_cases;
                    affine_ok += rel <= 1e-10;
                }
                const double w = psi_wasserstein(m, other, c, 2.0);
                const double rel = std::abs(psi_wasserstein(m, other, scaled, 2.0) / (std::abs(alpha) * w) - 1.0);
                worst_affine = std::max(worst_affine, rel);
                ++affine_cases;
                affine_ok += rel <= 1e-10;
            }
        }
    }
    return {exact == cases && affine_ok == affine_cases,
            std::to_string(exact) + "/" + std::to_string(cases) + " exact composition+pushforward cases, " +
                std::to_string(affine_ok) + "/" + std::to_string(affine_cases) +
                " affine cases, worst affine rel err " + fmt(worst_affine)};
}

double brute_force_wp(std::vector<double> x, std::vector<double> y, double p) {
    std::sort(y.begin(), y.end());
    double best = INFINITY;
    do {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i] - y[i]), p);
        best = std::min(best, acc / static_cast<double>(x.size()));
    } while (std::next_permutation(y.begin(), y.end()));
    return std::pow(best, 1.0 / p);
}

Outcome transport_oracle() {
    std::mt19937_64 eng(606);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    std::uniform_int_distribution<int> size(1, 6);
    const std::vector<CT> ts = {CT::identity(), CT::log(), CT::arctan()};
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = size(eng);
        std::vector<double> x(n), y(n), px(n), py(n);
        for (auto& v : x) v = u(eng);
        for (auto& v : y) v = u(eng);
        const CT& t = ts[k % ts.size()];
        for (int i = 0; i < n; ++i) {
            px[i] = forward(t, x[i]);
            py[i] = forward(t, y[i]);
        }
        const double p = k % 2 ? 2.0 : 1.0;
        worst = std::max(worst, std::abs(psi_wasserstein(EmpiricalMeasure(x), EmpiricalMeasure(y), t, p) -
                                         brute_force_wp(px, py, p)));
    }
    return {worst <= 1e-12, "max |quantile - brute force| = " + fmt(worst)};
}

Outcome t2_tightness() {
    double worst = 0.0;
    bool holds = true;
    for (double m : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0}) {
        const auto r = t2_check(m);
        worst = std::max({worst, std::abs(r.lhs - std::abs(m)), std::abs(r.rhs - std::abs(m))});
        holds = holds && r.holds;
    }
    return {worst <= 1e-12 && holds, "max deviation from |m| = " + fmt(worst)};
}

Outcome enlargement_floor() {
    const auto data = sample(DistributionSpec(dist::LogNormal{0.0, 1.0}), 200000, 8);
    const std::vector<double> eps = {0.0, 0.5, 1.0, 2.0};
    const auto rows = enlargement_check(data, eps, 100000, 8);
    bool ok = true;
    std::string detail;
    for (const auto& r : rows) {
        ok = ok && r.measured >= r.floor - 3.0 * r.std_err;
        detail += "eps=" + fmt(r.eps) + ": " + fmt(r.measured) + " vs " + fmt(r.floor) + "; ";
    }
    return {ok, detail};
}

EmpiricalMeasure truncated_gaussian(double mu, std::size_t n, std::uint64_t seed) {
    Rng rng(split_seed(seed, 0));
    std::vector<double> xs;
    while (xs.size() < n) {
        const double x = mu + normal_quantile(rng.uniform_open());
        if (x > 0.0) xs.push_back(x);
    }
    return EmpiricalMeasure(xs);
}

// Exhaustive scan of the Jacobian-normalized functional over Box-Cox exponents in [-1, 2].
double exhaustive_lambda(const EmpiricalMeasure& m) {
    const std::span<const EmpiricalMeasure> one(&m, 1);
    double best_l = 0.0, best_v = INFINITY;
    for (int k = -100; k <= 200; k += 2) {
        const CT t = CT::box_cox(k / 100.0);
        const double j = geometric_mean_jacobian(one, t);
        const double v = concentration_functional(m, t, Estimator::MgfGrid) / (j * j);
        if (v < best_v) {
            best_v = v;
            best_l = k / 100.0;
        }
    }
    return best_l;
}

Outcome adaptive_selection() {
    const std::vector<EmpiricalMeasure> ln = {sample(DistributionSpec(dist::LogNormal{0.0, 1.0}), 10000, 9)};
    const std::vector<EmpiricalMeasure> gs = {truncated_gaussian(5.0, 10000, 9)};
    const auto s1 = select_optimal_transform(ln, TransformGrid::default_for(ln), Estimator::MgfGrid);
    const auto s2 = select_optimal_transform(gs, TransformGrid::default_for(gs), Estimator::MgfGrid);
    const double o1 = exhaustive_lambda(ln.front()), o2 = exhaustive_lambda(gs.front());
    const bool ok1 = s1.lambda_hat && std::abs(*s1.lambda_hat) <= 0.25;
    const bool ok2 = s2.best.as<maps::Identity>() || (s2.lambda_hat && std::abs(*s2.lambda_hat - 1.0) <= 0.25);
    const bool oracle_ok = std::abs(o1) <= 0.25 && std::abs(o2 - 1.0) <= 0.25;
    return {ok1 && ok2 && oracle_ok, "lognormal -> " + s1.best.name() + " (oracle lambda " + fmt(o1) +
                                         "), gaussian -> " + s2.best.name() + " (oracle lambda " + fmt(o2) + ")"};
}

Outcome applications() {
    std::mt19937_64 eng(10);
    std::normal_distribution<double> nd;
    DesignMatrix x{Eigen::MatrixXd(200, 4), {}};
    for (int i = 0; i < 200; ++i) x.values.row(i) << 1.0, nd(eng), nd(eng), nd(eng);
    const Eigen::Vector4d beta(0.2, -0.7, 1.1, 0.05);
    const Eigen::VectorXd y = (x.values * beta).array().exp().matrix();
    const double beta_err = (log_linear_fit(x, y).beta - beta).cwiseAbs().maxCoeff();

    const std::vector<SpdMatrix> pair = {SpdMatrix(Eigen::MatrixXd(Eigen::Vector2d(1.0, 4.0).asDiagonal())),
                                         SpdMatrix(Eigen::MatrixXd(Eigen::Vector2d(4.0, 1.0).asDiagonal()))};
    const double cov_err =
        (geometric_mean_covariance(pair).matrix() - 2.0 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff();

    std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
    std::uniform_int_distribution<int> half(0, 100);
    int median_ok = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> xs(2 * half(eng) + 1);
        for (auto& v : xs) v = u(eng);
        std::vector<double> s = xs;
        std::nth_element(s.begin(), s.begin() + s.size() / 2, s.end());
        const double med = s[s.size() / 2];
        const EmpiricalMeasure m(xs);
        median_ok += psi_median(m, CT::log()) == med && psi_median(m, CT::logit()) == med &&
                     psi_median(m, CT::box_cox(0.5)) == med;
    }
    return {beta_err <= 1e-10 && cov_err <= 1e-10 && median_ok == 1000,
            "beta err " + fmt(beta_err) + ", covariance err " + fmt(cov_err) + ", medians " +
                std::to_string(median_ok) + "/1000"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "improvement factor and published-value flags", 1.0, improvement_factor_claims},
        {2, "portfolio variance cap", 1.0, portfolio_cap},
        {3, "bound domination (3 laws x 3 statistics x 5 seeds, 1e5 reps)", 120.0, bound_domination},
        {4, "two-point extremality of the sub-Gaussian parameter", 30.0, rademacher_extremality},
        {5, "exact composition/pushforward identities, affine laws", 60.0, structural_identities},
        {6, "1-D transport against brute-force permutations", 60.0, transport_oracle},
        {7, "T2 tightness on Gaussian shifts", 1.0, t2_tightness},
        {8, "enlargement floor for gaussianized log-normal data", 30.0, enlargement_floor},
        {9, "adaptive Box-Cox selection", 30.0, adaptive_selection},
        {10, "applications: regression, geometric mean, psi-median", 60.0, applications},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.time_limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s [%d] %s: %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    o.detail.c_str(), secs, c.time_limit_s, in_time ? "" : ", EXCEEDED");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
