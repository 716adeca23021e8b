#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "psiconc/bounds.hpp"
#include "psiconc/diffeo.hpp"
#include "psiconc/measure.hpp"
#include "psiconc/random.hpp"

namespace psiconc {

namespace dist {
struct Uniform {
    double a, b;
};
/// P(X = b) = w, P(X = a) = 1 - w.
struct TwoPoint {
    double a, b, w;
};
struct LogNormal {
    double m, s;
};
struct Gamma {
    double shape, scale;
};
/// Density proportional to x^(-alpha - 1) on [a, b].
struct ParetoTruncated {
    double alpha, a, b;
};
struct Beta {
    double alpha, beta;
};
}  // namespace dist

/// Parametric sampler description; parameters are validated on construction
/// (InvalidParameters).
class DistributionSpec {
public:
    using Family = std::variant<dist::Uniform, dist::TwoPoint, dist::LogNormal, dist::Gamma,
                                dist::ParetoTruncated, dist::Beta>;

    explicit DistributionSpec(Family f);

    const Family& family() const noexcept { return family_; }
    /// Closed for bounded families, (0, inf) / (0, 1) markers otherwise.
    Interval support() const;
    std::optional<SupportInterval> bounded_support() const;
    std::string name() const;

    /// Inverse CDF at u in (0, 1). Beta inverts the regularized incomplete
    /// beta function numerically to 1e-10.
    double quantile(double u) const;

    double draw(Rng& rng) const { return quantile(rng.uniform_open()); }

private:
    Family family_;
};

/// n inverse-CDF draws from stream 0 of `seed`, as a uniform-weight measure.
EmpiricalMeasure sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

enum class Statistic { Sum, Product, Max };

std::string to_string(Statistic s);

struct SimResult {
    std::string statistic;
    std::string bound_name;
    std::string formula;
    std::vector<double> t_grid;
    std::vector<double> empirical_tail;
    std::vector<double> bound;
    std::vector<double> std_err;
    std::vector<bool> dominated;
    std::size_t n_reps = 0;
    std::uint64_t seed = 0;
    /// Empirical mean (Sum, Product) or median (Max) of the statistic.
    double center = 0.0;
    /// Monte Carlo error of `center`.
    double center_std_err = 0.0;
    /// MgfGrid sub-Gaussian parameter of the replicated statistic.
    double mgf_sigma_sq = 0.0;
    /// Sub-Gaussian parameter implied by the bound.
    double bound_sigma_sq = 0.0;

    bool all_dominated() const;
};

/// Replications run in blocks of this many; block b draws from stream b + 1.
inline constexpr std::size_t kReplicationBlock = 2048;

/// Bound report matching (statistic, transform): Sum -> two-sided Hoeffding
/// in psi-coordinates; Product (transform Log or Identity) -> log or
/// arithmetic-geometric product bound; Max (Log or Identity) -> median bound.
TailBoundReport matching_bound(const DistributionSpec& spec, std::size_t n_vars, Statistic statistic,
                               const CoordinateTransform& transform);

/// Default deviations: c * sqrt(sigma^2) of the matching bound for
/// c in {0, 0.5, ..., 4}.
std::vector<double> default_t_grid(const DistributionSpec& spec, std::size_t n_vars, Statistic statistic,
                                   const CoordinateTransform& transform);

/// Empirical two-sided tail P(|T - center| >= t) of the statistic over
/// n_reps replications against the matching bound; dominated[i] is
/// empirical <= bound + 3 * std_err. Bit-identical for identical inputs
/// regardless of worker count.
SimResult verify_bound(const DistributionSpec& spec, std::size_t n_vars, Statistic statistic,
                       const CoordinateTransform& transform, std::span<const double> t_grid,
                       std::size_t n_reps, std::uint64_t seed);

struct EnlargementRow {
    double eps;
    double measured;
    double floor;
    double std_err;
    double margin;
};

/// Holds out n_holdout points (seeded Fisher-Yates split), gaussianizes the
/// rest, takes A = {psi <= 0} and reports the holdout fraction of
/// {psi < eps} against Phi(eps). Throws InsufficientData when fewer than 10
/// points remain for fitting.
std::vector<EnlargementRow> enlargement_check(const EmpiricalMeasure& samples,
                                              std::span<const double> eps_grid, std::size_t n_holdout,
                                              std::uint64_t seed);

}  // namespace psiconc
