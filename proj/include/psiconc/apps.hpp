#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psiconc/diffeo.hpp"
#include "psiconc/measure.hpp"

namespace psiconc {

/// n x p regressor matrix with optional column labels.
struct DesignMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> labels;
};

struct LogLinearFit {
    Eigen::VectorXd beta;
    /// Residual variance of log y with divisor n - p (0 when n == p).
    double sigma_sq;
    /// Smallest eigenvalue of X^T X / n.
    double lambda_min;
};

/// Least squares of log y on X through the Cholesky factor of X^T X.
/// Throws NonPositiveResponse, RankDeficient (n < p or lambda_min <= 1e-10),
/// DimensionMismatch.
LogLinearFit log_linear_fit(const DesignMatrix& x, const Eigen::Ref<const Eigen::VectorXd>& y);

/// min(1, 2p exp(-n t^2 lambda_min / (2 sigma^2))).
double regression_deviation_bound(std::size_t p, std::size_t n, double lambda_min, double sigma_sq, double t);

struct PortfolioBound {
    double bound;
    /// delta^2 / (1 - delta)^2.
    double sigma_cap;
    double sigma_used;
};

/// Deviation bound exp(-t^2 / (2 sigma^2)) for the normalized log return of
/// n periods with per-period returns in [1 - delta, 1 + delta]. sigma^2 is
/// the supplied log-return variance or, absent one, the cap.
PortfolioBound portfolio_bound(double delta, std::size_t n, double t, std::optional<double> sigma_log_sq);

/// Symmetric positive definite matrix, validated on construction
/// (DimensionMismatch if not square, NotSpd if asymmetric beyond 1e-12
/// relative or an eigenvalue is <= 0).
class SpdMatrix {
public:
    explicit SpdMatrix(Eigen::MatrixXd m);

    const Eigen::MatrixXd& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }
    double min_eigenvalue() const noexcept { return lo_; }
    double max_eigenvalue() const noexcept { return hi_; }

private:
    Eigen::MatrixXd m_;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline constexpr Eigen::Index kMaxCovarianceDim = 64;

/// exp(mean_i log S_i). Throws DimensionMismatch, InvalidArgument (empty or d > 64).
SpdMatrix geometric_mean_covariance(std::span<const SpdMatrix> mats);

/// min(1, 2 d^2 exp(-n t^2 / (2 d log^2(b/a)))).
double covariance_deviation_bound(std::size_t n, std::size_t d, double a, double b, double t);

/// psi^{-1}(median psi(X_i)). Odd n returns the middle sample itself; even n
/// maps the midpoint of the two middle transformed values back.
/// Throws EmptySample, DomainError.
double psi_median(const EmpiricalMeasure& samples, const CoordinateTransform& t);

}  // namespace psiconc
