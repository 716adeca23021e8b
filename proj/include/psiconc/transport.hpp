#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "psiconc/diffeo.hpp"
#include "psiconc/measure.hpp"

namespace psiconc {

/// One cell of the monotone (quantile) coupling: `mass` moved from `left` to `right`.
struct CouplingCell {
    double mass;
    double left;
    double right;
};

/// Monotone coupling of two measures over the merged breakpoints of their
/// cumulative weights. The 1-D optimal plan for every convex cost.
class Coupling1D {
public:
    Coupling1D(const EmpiricalMeasure& left, const EmpiricalMeasure& right);

    const std::vector<CouplingCell>& cells() const noexcept { return cells_; }
    /// (sum mass |left - right|^p)^(1/p).
    double cost(double p) const;

private:
    std::vector<CouplingCell> cells_;
};

/// W_p(psi_* mu, psi_* nu) computed exactly from the quantile functions.
/// Throws DomainError for points outside t.domain(), InvalidArgument for p < 1.
double psi_wasserstein(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const CoordinateTransform& t,
                       double p);

struct T2Check {
    double lhs;
    double rhs;
    bool holds;
    /// Empirical W2 under a gaussianizer, when n_report > 0.
    std::optional<double> empirical_w2;
    /// empirical_w2 - lhs.
    std::optional<double> mc_gap;
};

/// Transport-entropy check for the pair psi_* mu = N(0, 1),
/// psi_* nu = N(shift, 1): lhs = W2 = |shift|, rhs = sqrt(2 KL) with
/// KL = shift^2 / 2. With n_report > 0, draws mu ~ LogNormal(0, 1) and
/// nu = exp(N(shift, 1)) (n_report each) and evaluates W2 through
/// `gaussianizer`, or one fitted to the mu sample when null.
T2Check t2_check(double shift, std::size_t n_report = 0, std::uint64_t seed = 42,
                 const CoordinateTransform* gaussianizer = nullptr);

}  // namespace psiconc
