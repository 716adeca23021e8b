#include "psiconc/apps.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "psiconc/errors.hpp"
#include "psiconc/linalg.hpp"

namespace psiconc {

LogLinearFit log_linear_fit(const DesignMatrix& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
    const Eigen::Index n = x.values.rows();
    const Eigen::Index p = x.values.cols();
    if (y.size() != n)
        throw DimensionMismatch("response has " + std::to_string(y.size()) + " entries, design has " +
                                std::to_string(n) + " rows");
    if (p < 1) throw RankDeficient("design has no columns");
    if (n < p) throw RankDeficient("fewer rows than columns");
    if (!x.labels.empty() && static_cast<Eigen::Index>(x.labels.size()) != p)
        throw DimensionMismatch("label count differs from column count");
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(y(i) > 0.0) || !std::isfinite(y(i)))
            throw NonPositiveResponse("response " + std::to_string(i) + " is not a finite positive number");

    const Eigen::MatrixXd gram = x.values.transpose() * x.values;
    const double lambda_min = jacobi_eigen(gram / static_cast<double>(n)).values.minCoeff();
    if (!(lambda_min > 1e-10)) throw RankDeficient("smallest eigenvalue of X^T X / n is " + std::to_string(lambda_min));

    const Eigen::VectorXd log_y = y.array().log().matrix();
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw RankDeficient("normal equations are not positive definite");

    LogLinearFit fit;
    fit.beta = llt.solve(x.values.transpose() * log_y);
    fit.lambda_min = lambda_min;
    fit.sigma_sq = n > p ? (log_y - x.values * fit.beta).squaredNorm() / static_cast<double>(n - p) : 0.0;
    return fit;
}

double regression_deviation_bound(std::size_t p, std::size_t n, double lambda_min, double sigma_sq, double t) {
    if (p == 0 || n == 0) throw InvalidArgument("p and n must be positive");
    if (!(lambda_min > 0.0) || !(sigma_sq > 0.0)) throw InvalidArgument("lambda_min and sigma^2 must be positive");
    if (!(t >= 0.0)) throw InvalidArgument("t must be non-negative");
    const double e = static_cast<double>(n) * t * t * lambda_min / (2.0 * sigma_sq);
    return std::min(1.0, 2.0 * static_cast<double>(p) * std::exp(-e));
}

PortfolioBound portfolio_bound(double delta, std::size_t n, double t, std::optional<double> sigma_log_sq) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    if (n == 0) throw InvalidArgument("n must be positive");
    if (!(t >= 0.0)) throw InvalidArgument("t must be non-negative");
    PortfolioBound out;
    out.sigma_cap = delta * delta / ((1.0 - delta) * (1.0 - delta));
    if (sigma_log_sq) {
        if (!(*sigma_log_sq > 0.0)) throw InvalidArgument("sigma_log^2 must be positive");
        if (*sigma_log_sq > out.sigma_cap + 1e-12)
            throw InvalidArgument("sigma_log^2 exceeds the cap delta^2/(1-delta)^2 = " + std::to_string(out.sigma_cap));
        out.sigma_used = *sigma_log_sq;
    } else {
        out.sigma_used = out.sigma_cap;
    }
    out.bound = std::min(1.0, std::exp(-t * t / (2.0 * out.sigma_used)));
    return out;
}

SpdMatrix::SpdMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) throw DimensionMismatch("SPD matrix must be square and non-empty");
    if (!m_.allFinite()) throw NotSpd("matrix has non-finite entries");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw NotSpd("matrix is not symmetric");
    const auto e = jacobi_eigen(m_);
    lo_ = e.values.minCoeff();
    hi_ = e.values.maxCoeff();
    if (!(lo_ > 0.0)) throw NotSpd("smallest eigenvalue is " + std::to_string(lo_));
}

SpdMatrix geometric_mean_covariance(std::span<const SpdMatrix> mats) {
    if (mats.empty()) throw InvalidArgument("no matrices");
    const Eigen::Index d = mats.front().dim();
    if (d > kMaxCovarianceDim) throw InvalidArgument("dimension exceeds " + std::to_string(kMaxCovarianceDim));
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
    for (const auto& s : mats) {
        if (s.dim() != d) throw DimensionMismatch("matrices have different dimensions");
        acc += spd_log(s.matrix());
    }
    acc /= static_cast<double>(mats.size());
    return SpdMatrix(sym_exp(acc));
}

double covariance_deviation_bound(std::size_t n, std::size_t d, double a, double b, double t) {
    if (n == 0 || d == 0) throw InvalidArgument("n and d must be positive");
    if (!(a > 0.0 && a < b) || !std::isfinite(b)) throw InvalidArgument("need 0 < a < b");
    if (!(t >= 0.0)) throw InvalidArgument("t must be non-negative");
    const double l = std::log(b / a);
    const double dd = static_cast<double>(d);
    return std::min(1.0, 2.0 * dd * dd * std::exp(-static_cast<double>(n) * t * t / (2.0 * dd * l * l)));
}

double psi_median(const EmpiricalMeasure& samples, const CoordinateTransform& t) {
    if (samples.empty()) throw EmptySample("psi-median of an empty sample");
    const auto pts = samples.points();
    for (double x : pts)
        if (!t.domain().contains(x)) throw DomainError(std::to_string(x) + " is outside " + t.domain().str());
    const std::size_t n = pts.size();
    if (n % 2 == 1) return pts[n / 2];  // a monotone map preserves the middle order statistic
    // For decreasing maps the two middle values swap, but their midpoint does not change.
    const double mid = 0.5 * (forward(t, pts[n / 2 - 1]) + forward(t, pts[n / 2]));
    return inverse(t, mid);
}

}  // namespace psiconc
