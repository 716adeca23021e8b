#include "psiconc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psiconc/errors.hpp"

namespace psiconc {

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> points)
    : points_(std::move(points)) {
    if (points_.empty()) throw EmptySample("measure needs at least one point");
    for (double x : points_)
        if (!std::isfinite(x)) throw InvalidArgument("non-finite point");
    std::sort(points_.begin(), points_.end());
    weights_.assign(points_.size(), 1.0 / static_cast<double>(points_.size()));
    uniform_ = true;
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty()) throw EmptySample("measure needs at least one point");
    if (points_.size() != weights_.size())
        throw InvalidArgument("points and weights differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) throw InvalidArgument("non-finite point");
        if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i]))
            throw InvalidArgument("weights must be finite and non-negative");
        total += weights_[i];
    }
    if (!(total > 0.0)) throw InvalidArgument("weights sum to zero");
    for (double& w : weights_) w /= total;
    uniform_ = std::all_of(weights_.begin(), weights_.end(),
                           [&](double w) { return w == weights_.front(); });
    sort_pairs();
}

void EmpiricalMeasure::sort_pairs() {
    std::vector<std::size_t> order(points_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (points_[i] != points_[j]) return points_[i] < points_[j];
        return weights_[i] < weights_[j];
    });
    std::vector<double> p(points_.size()), w(points_.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        p[k] = points_[order[k]];
        w[k] = weights_[order[k]];
    }
    points_ = std::move(p);
    weights_ = std::move(w);
}

EmpiricalMeasure EmpiricalMeasure::push(const std::function<double(double)>& f) const {
    EmpiricalMeasure out;
    out.points_.reserve(points_.size());
    for (double x : points_) {
        const double y = f(x);
        if (!std::isfinite(y)) throw DomainError("pushforward produced a non-finite value");
        out.points_.push_back(y);
    }
    out.weights_ = weights_;
    out.uniform_ = uniform_;
    out.sort_pairs();
    return out;
}

double mean(const EmpiricalMeasure& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m.weights()[i] * m.points()[i];
    return s;
}

double variance(const EmpiricalMeasure& m) {
    const double mu = mean(m);
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double d = m.points()[i] - mu;
        s += m.weights()[i] * d * d;
    }
    return s;
}

}  // namespace psiconc
