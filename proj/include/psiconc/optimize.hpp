#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psiconc/diffeo.hpp"
#include "psiconc/measure.hpp"

namespace psiconc {

enum class Estimator {
    /// (max psi - min psi)^2 / 4: exact for the two-point extremal law.
    RangeBased,
    /// sup over a symmetric log-spaced lambda grid of 2 log M(lambda) / lambda^2,
    /// M the centered empirical MGF of psi(points).
    MgfGrid,
};

std::string to_string(Estimator e);

/// Dimensionless MGF grid levels: 41 points log-spaced on [1e-2, 1e2]. The
/// evaluated lambdas are +-level / s, s the weighted standard deviation of
/// the transformed points.
std::span<const double> mgf_grid_levels();

/// Empirical sub-Gaussian parameter of psi_* m. Throws DomainError if a
/// point is outside t.domain().
double concentration_functional(const EmpiricalMeasure& m, const CoordinateTransform& t,
                                Estimator estimator);

/// exp(mean log |psi'(x)|) pooled over the measures (each measure weighted
/// equally): the geometric-mean Jacobian used to put candidates on a common
/// scale before comparing them.
double geometric_mean_jacobian(std::span<const EmpiricalMeasure> ms, const CoordinateTransform& t);

struct TransformGrid {
    std::vector<CoordinateTransform> candidates;
    /// Closed hull of the data; every candidate must be defined on it.
    Interval domain_filter;
    /// Golden-section refinement of the Box-Cox exponent inside the bracket
    /// around the best grid exponent.
    bool refine_box_cox = true;

    /// Identity; Log and BoxCox({-1, -0.5, 0, 0.5, 1, 2}) when lo > 0; Logit
    /// when the hull is inside (0, 1).
    static TransformGrid default_for(const Interval& hull);
    static TransformGrid default_for(std::span<const EmpiricalMeasure> ms);
};

inline constexpr int kGoldenSectionIterations = 20;

struct SelectionRow {
    CoordinateTransform transform;
    /// sup over measures of F[mu, psi] / J(psi)^2.
    double value;
    /// sup over measures of the raw F[mu, psi].
    double raw_value;
    bool refined = false;
};

struct Selection {
    CoordinateTransform best;
    double value = 0.0;
    double raw_value = 0.0;
    /// Box-Cox exponent of the winner (0 for Log); empty for other kinds.
    std::optional<double> lambda_hat;
    std::vector<SelectionRow> table;
};

/// argmin over candidates of the Jacobian-normalized sup of the
/// concentration functional. Values within 1e-12 (relative) of the minimum
/// tie; ties prefer Identity, then Log, then smallest |lambda|, then grid order.
/// Throws EmptyGrid, DomainError, InvalidArgument (no measures).
Selection select_optimal_transform(std::span<const EmpiricalMeasure> ms, const TransformGrid& grid,
                                   Estimator estimator);

/// Closed-form optimal coordinate for a named family:
/// gaussian -> identity, lognormal -> log, gamma -> boxcox(0.5) if shape > 1
/// else log, pareto -> log, beta -> logit, bounded_positive -> log if r > e^2
/// else identity. Throws UnknownFamily, InvalidArgument on missing params.
CoordinateTransform catalog_optimal(std::string_view family, const std::map<std::string, double>& params);

enum class ExpFamily { Bernoulli, Poisson, Exponential, Gaussian };

std::string to_string(ExpFamily f);

struct ExpFamilySpec {
    ExpFamily family;
    /// p for Bernoulli, rate for Poisson/Exponential, mean for Gaussian (unit variance).
    double parameter;
    /// One of -1 (mean parameters), 0 (midpoint), 1 (natural parameters).
    int alpha;
};

/// Throws InvalidParameters for out-of-range parameters or alpha.
void validate(const ExpFamilySpec& spec);

/// theta for the spec's own distribution: logit p, log rate, -rate, mean.
double natural_parameter(const ExpFamilySpec& spec);

/// Gradient of the log-partition function at theta.
double mean_parameter(ExpFamily family, double theta);

/// psi_alpha(theta): theta (alpha = 1), grad A(theta) (alpha = -1),
/// (theta + grad A(theta)) / 2 (alpha = 0). Throws DomainError when theta is
/// outside the natural parameter space (theta < 0 for Exponential).
double exp_family_coordinate(const ExpFamilySpec& spec, double theta);

}  // namespace psiconc
