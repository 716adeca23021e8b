#include "psiconc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "psiconc/errors.hpp"
#include "psiconc/normal.hpp"
#include "psiconc/optimize.hpp"
#include "psiconc/parallel.hpp"

namespace psiconc {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_all(std::initializer_list<double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check(const dist::Uniform& d) {
    if (!finite_all({d.a, d.b}) || !(d.a < d.b)) throw InvalidParameters("Uniform needs a < b");
}
void check(const dist::TwoPoint& d) {
    if (!finite_all({d.a, d.b, d.w}) || !(d.a < d.b)) throw InvalidParameters("TwoPoint needs a < b");
    if (!(d.w >= 0.0 && d.w <= 1.0)) throw InvalidParameters("TwoPoint weight must lie in [0, 1]");
}
void check(const dist::LogNormal& d) {
    if (!finite_all({d.m, d.s}) || !(d.s > 0.0)) throw InvalidParameters("LogNormal needs s > 0");
}
void check(const dist::Gamma& d) {
    if (!finite_all({d.shape, d.scale}) || !(d.shape > 0.0) || !(d.scale > 0.0))
        throw InvalidParameters("Gamma needs shape > 0 and scale > 0");
}
void check(const dist::ParetoTruncated& d) {
    if (!finite_all({d.alpha, d.a, d.b}) || !(d.alpha > 0.0) || !(d.a > 0.0) || !(d.a < d.b))
        throw InvalidParameters("ParetoTruncated needs alpha > 0 and 0 < a < b");
}
void check(const dist::Beta& d) {
    if (!finite_all({d.alpha, d.beta}) || !(d.alpha > 0.0) || !(d.beta > 0.0))
        throw InvalidParameters("Beta needs alpha > 0 and beta > 0");
}

double beta_quantile(double alpha, double beta, double u) {
    auto f = [&](double x) { return boost::math::ibeta(alpha, beta, x) - u; };
    auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 1e-10; };
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, 0.0, 1.0, -u, 1.0 - u, tol, max_iter);
    const double x = 0.5 * (lo + hi);
    return std::clamp(x, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

double median_of_sorted(const std::vector<double>& s) {
    const std::size_t n = s.size();
    return n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

Coordinate coordinate_of(const CoordinateTransform& t, Statistic s) {
    if (t.as<maps::Log>()) return Coordinate::Log;
    if (t.as<maps::Identity>()) return Coordinate::Identity;
    throw InvalidArgument(to_string(s) + " statistic supports identity or log transforms, got " + t.name());
}

}  // namespace

DistributionSpec::DistributionSpec(Family f) : family_(std::move(f)) {
    std::visit([](const auto& d) { check(d); }, family_);
}

Interval DistributionSpec::support() const {
    return std::visit(overloaded{
                          [](const dist::Uniform& d) { return Interval{d.a, d.b, false, false}; },
                          [](const dist::TwoPoint& d) { return Interval{d.a, d.b, false, false}; },
                          [](const dist::ParetoTruncated& d) { return Interval{d.a, d.b, false, false}; },
                          [](const dist::Beta&) { return Interval{0.0, 1.0}; },
                          [](const auto&) { return Interval{0.0, kInf}; },
                      },
                      family_);
}

std::optional<SupportInterval> DistributionSpec::bounded_support() const {
    const Interval s = support();
    if (s.lo_open || s.hi_open) return std::nullopt;
    return SupportInterval(s.lo, s.hi);
}

std::string DistributionSpec::name() const {
    return std::visit(
        overloaded{
            [](const dist::Uniform& d) { return "uniform(" + num(d.a) + "," + num(d.b) + ")"; },
            [](const dist::TwoPoint& d) {
                return "twopoint(" + num(d.a) + "," + num(d.b) + "," + num(d.w) + ")";
            },
            [](const dist::LogNormal& d) { return "lognormal(" + num(d.m) + "," + num(d.s) + ")"; },
            [](const dist::Gamma& d) { return "gamma(" + num(d.shape) + "," + num(d.scale) + ")"; },
            [](const dist::ParetoTruncated& d) {
                return "pareto(" + num(d.alpha) + "," + num(d.a) + "," + num(d.b) + ")";
            },
            [](const dist::Beta& d) { return "beta(" + num(d.alpha) + "," + num(d.beta) + ")"; },
        },
        family_);
}

double DistributionSpec::quantile(double u) const {
    return std::visit(
        overloaded{
            [u](const dist::Uniform& d) { return std::min(d.b, d.a + (d.b - d.a) * u); },
            [u](const dist::TwoPoint& d) { return u < 1.0 - d.w ? d.a : d.b; },
            [u](const dist::LogNormal& d) { return std::exp(d.m + d.s * normal_quantile(u)); },
            [u](const dist::Gamma& d) {
                const double x = boost::math::gamma_p_inv(d.shape, u) * d.scale;
                return std::max(x, std::numeric_limits<double>::min());
            },
            [u](const dist::ParetoTruncated& d) {
                const double tail = std::pow(d.a / d.b, d.alpha);
                const double x = d.a * std::pow(1.0 - u * (1.0 - tail), -1.0 / d.alpha);
                return std::clamp(x, d.a, d.b);
            },
            [u](const dist::Beta& d) { return beta_quantile(d.alpha, d.beta, u); },
        },
        family_);
}

EmpiricalMeasure sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("sample size must be >= 1");
    Rng rng(split_seed(seed, 0));
    std::vector<double> xs(n);
    for (double& x : xs) x = spec.draw(rng);
    return EmpiricalMeasure(std::move(xs));
}

std::string to_string(Statistic s) {
    switch (s) {
        case Statistic::Sum: return "sum";
        case Statistic::Product: return "product";
        case Statistic::Max: return "max";
    }
    return "?";
}

bool SimResult::all_dominated() const {
    return std::all_of(dominated.begin(), dominated.end(), [](bool b) { return b; });
}

TailBoundReport matching_bound(const DistributionSpec& spec, std::size_t n_vars, Statistic statistic,
                               const CoordinateTransform& transform) {
    if (n_vars < 1) throw InvalidArgument("n_vars must be >= 1");
    const auto iv = spec.bounded_support();
    if (!iv) throw InvalidArgument("bound verification needs a bounded support, got " + spec.name());
    switch (statistic) {
        case Statistic::Sum: return sum_bound_report(transform, *iv, n_vars);
        case Statistic::Product:
            return product_bound_report(*iv, n_vars, coordinate_of(transform, statistic));
        case Statistic::Max: return max_bound_report(*iv, n_vars, coordinate_of(transform, statistic));
    }
    throw InvalidArgument("unknown statistic");
}

std::vector<double> default_t_grid(const DistributionSpec& spec, std::size_t n_vars, Statistic statistic,
                                   const CoordinateTransform& transform) {
    const double scale = std::sqrt(matching_bound(spec, n_vars, statistic, transform).sigma_sq);
    std::vector<double> grid;
    for (int k = 0; k <= 8; ++k) grid.push_back(0.5 * k * scale);
    return grid;
}

SimResult verify_bound(const DistributionSpec& spec, std::size_t n_vars, Statistic statistic,
                       const CoordinateTransform& transform, std::span<const double> t_grid,
                       std::size_t n_reps, std::uint64_t seed) {
    if (n_reps < 1) throw InvalidArgument("n_reps must be >= 1");
    for (double t : t_grid)
        if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("t grid values must be finite and >= 0");
    const TailBoundReport report = matching_bound(spec, n_vars, statistic, transform);
    const CoordinateTransform psi = statistic == Statistic::Product ? CoordinateTransform::log() : transform;

    std::vector<double> stat(n_reps);
    const std::size_t blocks = (n_reps + kReplicationBlock - 1) / kReplicationBlock;
    parallel_for(blocks, [&](std::size_t b) {
        Rng rng(split_seed(seed, b + 1));
        const std::size_t end = std::min(n_reps, (b + 1) * kReplicationBlock);
        for (std::size_t r = b * kReplicationBlock; r < end; ++r) {
            if (statistic == Statistic::Max) {
                double m = -kInf;
                for (std::size_t i = 0; i < n_vars; ++i) m = std::max(m, spec.draw(rng));
                stat[r] = forward(psi, m);
            } else {
                double s = 0.0;
                for (std::size_t i = 0; i < n_vars; ++i) s += forward(psi, spec.draw(rng));
                stat[r] = s;
            }
        }
    });

    SimResult res;
    res.statistic = to_string(statistic) + "/" + transform.name();
    res.bound_name = report.name;
    res.formula = report.formula;
    res.n_reps = n_reps;
    res.seed = seed;
    res.bound_sigma_sq = report.sigma_sq;
    const double n = static_cast<double>(n_reps);

    if (statistic == Statistic::Max) {
        std::vector<double> sorted = stat;
        std::sort(sorted.begin(), sorted.end());
        res.center = median_of_sorted(sorted);
        // Order statistics n/2 -+ sqrt(n)/2 bracket the median by one binomial sd.
        const double half = 0.5 * std::sqrt(n);
        const auto lo = static_cast<std::size_t>(std::max(0.0, std::floor(n / 2.0 - half)));
        const auto hi = std::min(n_reps - 1, static_cast<std::size_t>(std::ceil(n / 2.0 + half)));
        res.center_std_err = 0.5 * (sorted[hi] - sorted[lo]);
    } else {
        res.center = std::accumulate(stat.begin(), stat.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : stat) ss += (v - res.center) * (v - res.center);
        res.center_std_err = n_reps > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    }
    res.mgf_sigma_sq =
        concentration_functional(EmpiricalMeasure(stat), CoordinateTransform::identity(), Estimator::MgfGrid);

    for (double t : t_grid) {
        std::size_t hits = 0;
        for (double v : stat)
            if (std::abs(v - res.center) >= t) ++hits;
        const double p = static_cast<double>(hits) / n;
        const double se = std::sqrt(p * (1.0 - p) / n);
        const double bound = report.bound_at(t);
        res.t_grid.push_back(t);
        res.empirical_tail.push_back(p);
        res.bound.push_back(bound);
        res.std_err.push_back(se);
        res.dominated.push_back(p <= bound + 3.0 * se);
    }
    return res;
}

std::vector<EnlargementRow> enlargement_check(const EmpiricalMeasure& samples,
                                              std::span<const double> eps_grid, std::size_t n_holdout,
                                              std::uint64_t seed) {
    if (n_holdout < 1) throw InvalidArgument("n_holdout must be >= 1");
    if (samples.size() < n_holdout + 10)
        throw InsufficientData("need at least n_holdout + 10 samples, got " + std::to_string(samples.size()));
    for (double e : eps_grid)
        if (!(e >= 0.0) || !std::isfinite(e)) throw InvalidArgument("eps values must be finite and >= 0");

    std::vector<double> pts(samples.points().begin(), samples.points().end());
    Rng rng(split_seed(seed, 0));
    for (std::size_t i = pts.size() - 1; i > 0; --i) std::swap(pts[i], pts[rng.below(i + 1)]);
    const std::vector<double> holdout(pts.end() - static_cast<std::ptrdiff_t>(n_holdout), pts.end());
    pts.resize(pts.size() - n_holdout);
    const CoordinateTransform psi = gaussianize(EmpiricalMeasure(std::move(pts)));

    std::vector<double> z(holdout.size());
    std::transform(holdout.begin(), holdout.end(), z.begin(), [&](double x) { return forward(psi, x); });
    std::sort(z.begin(), z.end());

    std::vector<EnlargementRow> out;
    const double n = static_cast<double>(z.size());
    for (double eps : eps_grid) {
        const auto below = std::lower_bound(z.begin(), z.end(), eps) - z.begin();
        const double measured = static_cast<double>(below) / n;
        const double floor = normal_cdf(eps);
        out.push_back({eps, measured, floor, std::sqrt(measured * (1.0 - measured) / n), measured - floor});
    }
    return out;
}

}  // namespace psiconc
