#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "psiconc/diffeo.hpp"

namespace psiconc {

/// Range [lo, hi] of one variable in transformed coordinates; lo == hi allowed.
struct Range {
    double lo;
    double hi;
};

/// A named tail bound t -> P(deviation >= t), already capped at 1.
struct TailBoundReport {
    std::string name;
    /// Sub-Gaussian parameter such that bound_at(t) = c * exp(-t^2 / (2 sigma_sq)).
    double sigma_sq = 0.0;
    std::function<double(double)> bound_at;
    CoordinateTransform transform;
    std::vector<std::string> assumptions;
    std::string formula;
};

enum class Coordinate { Identity, Log };

std::string to_string(Coordinate c);

/// (psi(b) - psi(a))^2 / 4, the extremal sub-Gaussian parameter on [a, b] in
/// psi-coordinates (attained by the two-point law on {a, b}).
double hoeffding_constant(const CoordinateTransform& t, const SupportInterval& iv);

/// min(1, exp(-2 t^2 / (L^2 sum_i (hi_i - lo_i)^2))) for a function that is
/// L-Lipschitz in the coordinates where variable i ranges over [lo_i, hi_i].
/// With zero total width the bound is 1 at t = 0 and 0 beyond.
double master_tail_bound(double lipschitz, std::span<const Range> ranges, double t);

/// rho(a, b) = (b - a)^2 / log^2(b / a). Throws DomainError if a <= 0.
double improvement_factor(const SupportInterval& iv);

struct CoordinateRecommendation {
    Coordinate choice;
    /// ((r - 1) / log r)^2, the identity/log constant ratio with a scaled to 1.
    double normalized_ratio;
    /// (b - a)^2 / 4, in data units.
    double identity_constant;
    /// log^2(b / a) / 4.
    double log_constant;
    /// normalized_ratio > 1; holds for every r > 1.
    bool ratio_prefers_log;
    /// The published switch-over ratio e^2 used for `choice`.
    double stated_threshold = std::numbers::e * std::numbers::e;
};

/// Log when r = b/a exceeds e^2, else Identity. Throws DomainError if a <= 0.
CoordinateRecommendation recommend_coordinate(const SupportInterval& iv);

struct ProductBounds {
    double log_bound;
    double classical_bound;
};

/// Two-sided bounds on |log P_n - E log P_n| >= t:
/// log coordinates 2 exp(-2t^2 / sum log^2(b_i/a_i)) and the
/// arithmetic-geometric route 2 exp(-2t^2 / sum ((b_i - a_i)/a_i)^2), both capped at 1.
ProductBounds product_tail_bound(std::span<const SupportInterval> ivs, double t);

/// Upper deviation of the maximum of n i.i.d. variables on [a, b] above its
/// median: exp(-2 n t^2 / w^2) with w = b - a (Identity) or log(b/a) (Log).
double max_tail_bound(std::size_t n, const SupportInterval& iv, double t, Coordinate mode);

/// Two-sided bound for sum_i psi(X_i), X_i on iv: 2 * master_tail_bound, capped.
TailBoundReport sum_bound_report(const CoordinateTransform& t, const SupportInterval& iv,
                                 std::size_t n_vars);
/// Bound for log of a product of n_vars variables on iv, by mode.
TailBoundReport product_bound_report(const SupportInterval& iv, std::size_t n_vars, Coordinate mode);
TailBoundReport max_bound_report(const SupportInterval& iv, std::size_t n_vars, Coordinate mode);

}  // namespace psiconc
