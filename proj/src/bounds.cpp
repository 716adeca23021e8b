#include "psiconc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "psiconc/errors.hpp"

namespace psiconc {

namespace {

void require_nonnegative_t(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("deviation t must be finite and >= 0");
}

void require_positive(const SupportInterval& iv) {
    if (!(iv.a() > 0.0)) throw DomainError("log coordinates need a > 0");
}

// log(b/a) without cancellation when b is close to a.
double log_ratio(const SupportInterval& iv) { return std::log1p(iv.width() / iv.a()); }

double capped_exp(double prefactor, double exponent) {
    return std::min(1.0, prefactor * std::exp(exponent));
}

// Degenerate-width convention: 1 at t = 0, 0 for t > 0.
double gaussian_tail(double prefactor, double t, double denom) {
    if (denom == 0.0) return t == 0.0 ? 1.0 : 0.0;
    return capped_exp(prefactor, -2.0 * t * t / denom);
}

}  // namespace

std::string to_string(Coordinate c) { return c == Coordinate::Log ? "log" : "identity"; }

double hoeffding_constant(const CoordinateTransform& t, const SupportInterval& iv) {
    require_within_domain(t, iv);
    const double w = forward(t, iv.b()) - forward(t, iv.a());
    return w * w / 4.0;
}

double master_tail_bound(double lipschitz, std::span<const Range> ranges, double t) {
    if (!(lipschitz > 0.0) || !std::isfinite(lipschitz))
        throw InvalidArgument("Lipschitz constant must be > 0");
    require_nonnegative_t(t);
    double sum_sq = 0.0;
    for (const Range& r : ranges) {
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.hi < r.lo)
            throw InvalidArgument("range needs finite lo <= hi");
        sum_sq += (r.hi - r.lo) * (r.hi - r.lo);
    }
    return gaussian_tail(1.0, t, lipschitz * lipschitz * sum_sq);
}

double improvement_factor(const SupportInterval& iv) {
    require_positive(iv);
    const double lr = log_ratio(iv);
    return iv.width() * iv.width() / (lr * lr);
}

CoordinateRecommendation recommend_coordinate(const SupportInterval& iv) {
    require_positive(iv);
    const double r_minus_1 = iv.width() / iv.a();
    const double lr = log_ratio(iv);
    CoordinateRecommendation rec{};
    rec.normalized_ratio = (r_minus_1 / lr) * (r_minus_1 / lr);
    rec.identity_constant = iv.width() * iv.width() / 4.0;
    rec.log_constant = lr * lr / 4.0;
    rec.ratio_prefers_log = rec.normalized_ratio > 1.0;
    rec.choice = iv.ratio() > rec.stated_threshold ? Coordinate::Log : Coordinate::Identity;
    return rec;
}

ProductBounds product_tail_bound(std::span<const SupportInterval> ivs, double t) {
    require_nonnegative_t(t);
    double log_sq = 0.0, classical_sq = 0.0;
    for (const auto& iv : ivs) {
        require_positive(iv);
        const double lr = log_ratio(iv);
        const double rel = iv.width() / iv.a();
        log_sq += lr * lr;
        classical_sq += rel * rel;
    }
    return {gaussian_tail(2.0, t, log_sq), gaussian_tail(2.0, t, classical_sq)};
}

double max_tail_bound(std::size_t n, const SupportInterval& iv, double t, Coordinate mode) {
    if (n < 1) throw InvalidArgument("max_tail_bound needs n >= 1");
    require_nonnegative_t(t);
    double w = iv.width();
    if (mode == Coordinate::Log) {
        require_positive(iv);
        w = log_ratio(iv);
    }
    return gaussian_tail(1.0, t, w * w / static_cast<double>(n));
}

TailBoundReport sum_bound_report(const CoordinateTransform& t, const SupportInterval& iv,
                                 std::size_t n_vars) {
    if (n_vars < 1) throw InvalidArgument("need at least one variable");
    const double lo = forward(t, iv.a()), hi = forward(t, iv.b());
    const Range r{std::min(lo, hi), std::max(lo, hi)};
    std::vector<Range> ranges(n_vars, r);
    TailBoundReport rep;
    rep.name = "sum-hoeffding";
    rep.sigma_sq = static_cast<double>(n_vars) * hoeffding_constant(t, iv);
    rep.bound_at = [ranges](double dev) {
        return std::min(1.0, 2.0 * master_tail_bound(1.0, ranges, dev));
    };
    rep.transform = t;
    rep.assumptions = {"independent variables", "each psi(X_i) in [psi(a), psi(b)]",
                       "statistic sum_i psi(X_i) is 1-Lipschitz in psi-coordinates"};
    rep.formula = "P(|S - E S| >= t) <= min(1, 2 exp(-2 t^2 / (n (psi(b) - psi(a))^2)))";
    return rep;
}

TailBoundReport product_bound_report(const SupportInterval& iv, std::size_t n_vars, Coordinate mode) {
    if (n_vars < 1) throw InvalidArgument("need at least one variable");
    require_positive(iv);
    std::vector<SupportInterval> ivs(n_vars, iv);
    TailBoundReport rep;
    rep.name = mode == Coordinate::Log ? "product-log" : "product-classical";
    const double w = mode == Coordinate::Log ? log_ratio(iv) : iv.width() / iv.a();
    rep.sigma_sq = static_cast<double>(n_vars) * w * w / 4.0;
    rep.bound_at = [ivs, mode](double dev) {
        const auto b = product_tail_bound(ivs, dev);
        return mode == Coordinate::Log ? b.log_bound : b.classical_bound;
    };
    rep.transform = mode == Coordinate::Log ? CoordinateTransform::log() : CoordinateTransform::identity();
    rep.assumptions = {"independent positive variables", "X_i in [a, b] with a > 0"};
    rep.formula = mode == Coordinate::Log
                      ? "P(|log P - E log P| >= t) <= min(1, 2 exp(-2 t^2 / sum log^2(b_i/a_i)))"
                      : "P(|log P - E log P| >= t) <= min(1, 2 exp(-2 t^2 / sum ((b_i - a_i)/a_i)^2))";
    return rep;
}

TailBoundReport max_bound_report(const SupportInterval& iv, std::size_t n_vars, Coordinate mode) {
    if (n_vars < 1) throw InvalidArgument("need at least one variable");
    if (mode == Coordinate::Log) require_positive(iv);
    TailBoundReport rep;
    rep.name = mode == Coordinate::Log ? "max-log" : "max-identity";
    const double w = mode == Coordinate::Log ? log_ratio(iv) : iv.width();
    rep.sigma_sq = w * w / (4.0 * static_cast<double>(n_vars));
    rep.bound_at = [iv, n_vars, mode](double dev) { return max_tail_bound(n_vars, iv, dev, mode); };
    rep.transform = mode == Coordinate::Log ? CoordinateTransform::log() : CoordinateTransform::identity();
    rep.assumptions = {"i.i.d. variables on [a, b]", "deviation measured above the median of the maximum"};
    rep.formula = mode == Coordinate::Log ? "P(log M - med(log M) >= t) <= exp(-2 n t^2 / log^2(b/a))"
                                          : "P(M - med(M) >= t) <= exp(-2 n t^2 / (b - a)^2)";
    return rep;
}

}  // namespace psiconc
