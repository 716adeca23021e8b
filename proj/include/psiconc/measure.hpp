#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace psiconc {

/// Weighted point list on the real line, sorted ascending by (point, weight).
/// Weights are non-negative and normalized to sum to one.
class EmpiricalMeasure {
public:
    EmpiricalMeasure() = default;

    /// Uniform weights. Throws EmptySample on empty input.
    explicit EmpiricalMeasure(std::vector<double> points);

    /// Explicit weights, normalized by their sum. Throws InvalidArgument on
    /// length mismatch, negative or non-finite weights, or zero total mass.
    EmpiricalMeasure(std::vector<double> points, std::vector<double> weights);

    std::span<const double> points() const noexcept { return points_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    double min() const { return points_.front(); }
    double max() const { return points_.back(); }

    bool uniform_weights() const noexcept { return uniform_; }

    /// Maps every point through `f` keeping weights paired with their points,
    /// then re-sorts. Weights are carried bit-for-bit (no renormalization).
    EmpiricalMeasure push(const std::function<double(double)>& f) const;

    friend bool operator==(const EmpiricalMeasure&, const EmpiricalMeasure&) = default;

private:
    void sort_pairs();

    std::vector<double> points_;
    std::vector<double> weights_;
    bool uniform_ = true;
};

double mean(const EmpiricalMeasure& m);
double variance(const EmpiricalMeasure& m);

}  // namespace psiconc
