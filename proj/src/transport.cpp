#include "psiconc/transport.hpp"

#include <cmath>

#include "psiconc/errors.hpp"
#include "psiconc/normal.hpp"
#include "psiconc/random.hpp"

namespace psiconc {

namespace {

std::vector<double> cumulative(const EmpiricalMeasure& m) {
    std::vector<double> c(m.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) c[i] = acc += m.weights()[i];
    c.back() = 1.0;
    return c;
}

}  // namespace

Coupling1D::Coupling1D(const EmpiricalMeasure& left, const EmpiricalMeasure& right) {
    if (left.empty() || right.empty()) throw EmptySample("coupling of an empty measure");
    const auto ca = cumulative(left), cb = cumulative(right);
    std::size_t i = 0, j = 0;
    double prev = 0.0;
    while (i < ca.size() && j < cb.size()) {
        const double next = std::min(ca[i], cb[j]);
        if (next > prev) cells_.push_back({next - prev, left.points()[i], right.points()[j]});
        prev = next;
        if (ca[i] == next) ++i;
        if (cb[j] == next) ++j;
    }
}

double Coupling1D::cost(double p) const {
    double acc = 0.0;
    for (const auto& c : cells_) acc += c.mass * std::pow(std::abs(c.left - c.right), p);
    return p == 1.0 ? acc : std::pow(acc, 1.0 / p);
}

double psi_wasserstein(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const CoordinateTransform& t,
                       double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("p must be >= 1");
    return Coupling1D(push(mu, t), push(nu, t)).cost(p);
}

T2Check t2_check(double shift, std::size_t n_report, std::uint64_t seed, const CoordinateTransform* gaussianizer) {
    T2Check out{};
    out.lhs = std::abs(shift);
    const double kl = shift * shift / 2.0;
    out.rhs = std::sqrt(2.0 * kl);
    out.holds = out.lhs <= out.rhs + 1e-12;
    if (n_report > 0) {
        Rng base_rng(split_seed(seed, 0)), shifted_rng(split_seed(seed, 1));
        std::vector<double> base(n_report), shifted(n_report);
        for (auto& x : base) x = std::exp(normal_quantile(base_rng.uniform_open()));
        for (auto& x : shifted) x = std::exp(shift + normal_quantile(shifted_rng.uniform_open()));
        const EmpiricalMeasure mu(std::move(base)), nu(std::move(shifted));
        const CoordinateTransform psi = gaussianizer ? *gaussianizer : gaussianize(mu);
        out.empirical_w2 = psi_wasserstein(nu, mu, psi, 2.0);
        out.mc_gap = *out.empirical_w2 - out.lhs;
    }
    return out;
}

}  // namespace psiconc
