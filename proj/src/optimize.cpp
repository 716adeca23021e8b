#include "psiconc/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "psiconc/errors.hpp"
#include "psiconc/parallel.hpp"

namespace psiconc {

namespace {

constexpr std::size_t kMgfLevels = 41;

std::array<double, kMgfLevels> make_levels() {
    std::array<double, kMgfLevels> out{};
    for (std::size_t k = 0; k < kMgfLevels; ++k)
        out[k] = std::pow(10.0, -2.0 + 4.0 * static_cast<double>(k) / (kMgfLevels - 1));
    return out;
}

const std::array<double, kMgfLevels> kLevels = make_levels();

struct WeightedValue {
    double value;
    double weight;
};

// Transformed points in canonical (value, weight) order, so that any two
// routes producing the same multiset reduce with identical arithmetic.
std::vector<WeightedValue> transformed(const EmpiricalMeasure& m, const CoordinateTransform& t) {
    std::vector<WeightedValue> out;
    out.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        out.push_back({forward(t, m.points()[i]), m.weights()[i]});
    std::sort(out.begin(), out.end(), [](const WeightedValue& a, const WeightedValue& b) {
        return std::tie(a.value, a.weight) < std::tie(b.value, b.weight);
    });
    return out;
}

double range_functional(const std::vector<WeightedValue>& v) {
    const double w = v.back().value - v.front().value;
    return w * w / 4.0;
}

double mgf_functional(const std::vector<WeightedValue>& v) {
    if (v.front().value == v.back().value) return 0.0;
    double mu = 0.0;
    for (const auto& p : v) mu += p.weight * p.value;
    std::vector<double> d(v.size());
    double var = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        d[i] = v[i].value - mu;
        var += v[i].weight * d[i] * d[i];
    }
    if (!(var > 0.0)) return 0.0;
    const double s = std::sqrt(var);
    const double d_max = std::max(std::abs(d.front()), std::abs(d.back()));

    double best = 0.0;
    for (double level : kLevels) {
        for (double sign : {1.0, -1.0}) {
            const double lambda = sign * level / s;
            double log_mgf;
            if (std::abs(lambda) * d_max < 0.5) {
                double acc = 0.0;
                for (std::size_t i = 0; i < v.size(); ++i) acc += v[i].weight * std::expm1(lambda * d[i]);
                log_mgf = std::log1p(acc);
            } else {
                const double top = std::max(lambda * d.front(), lambda * d.back());
                double acc = 0.0;
                for (std::size_t i = 0; i < v.size(); ++i)
                    acc += v[i].weight * std::exp(lambda * d[i] - top);
                log_mgf = top + std::log(acc);
            }
            best = std::max(best, 2.0 * log_mgf / (lambda * lambda));
        }
    }
    return best;
}

// Lower tuple = preferred on ties; fewer Affine wrappers break the last tie.
std::tuple<int, double, int> tie_rank(const CoordinateTransform& t) {
    const CoordinateTransform* core = &t;
    int depth = 0;
    for (; const auto* a = core->as<maps::Affine>(); ++depth) core = a->inner.get();
    if (core->as<maps::Identity>()) return {0, 0.0, depth};
    if (core->as<maps::Log>()) return {1, 0.0, depth};
    if (const auto* b = core->as<maps::BoxCox>()) return {2, std::abs(b->lambda), depth};
    return {3, 0.0, depth};
}

struct Evaluated {
    double value;
    double raw;
};

Evaluated evaluate(std::span<const EmpiricalMeasure> ms, const CoordinateTransform& t, Estimator est) {
    const double j = geometric_mean_jacobian(ms, t);
    double raw = 0.0;
    for (const auto& m : ms) raw = std::max(raw, concentration_functional(m, t, est));
    return {raw / (j * j), raw};
}

}  // namespace

std::string to_string(Estimator e) { return e == Estimator::MgfGrid ? "mgf" : "range"; }

std::span<const double> mgf_grid_levels() { return kLevels; }

double concentration_functional(const EmpiricalMeasure& m, const CoordinateTransform& t,
                                Estimator estimator) {
    if (m.empty()) throw EmptySample("concentration functional of an empty measure");
    const auto v = transformed(m, t);
    return estimator == Estimator::RangeBased ? range_functional(v) : mgf_functional(v);
}

double geometric_mean_jacobian(std::span<const EmpiricalMeasure> ms, const CoordinateTransform& t) {
    double total = 0.0;
    for (const auto& m : ms) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i)
            acc += m.weights()[i] * std::log(std::abs(derivative(t, m.points()[i])));
        total += acc;
    }
    return std::exp(total / static_cast<double>(ms.size()));
}

TransformGrid TransformGrid::default_for(const Interval& hull) {
    TransformGrid g;
    g.domain_filter = Interval{hull.lo, hull.hi, false, false};
    g.candidates.push_back(CoordinateTransform::identity());
    if (hull.lo > 0.0) {
        g.candidates.push_back(CoordinateTransform::log());
        if (hull.hi < 1.0) g.candidates.push_back(CoordinateTransform::logit());
        for (double lambda : {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0})
            g.candidates.push_back(CoordinateTransform::box_cox(lambda));
    }
    return g;
}

TransformGrid TransformGrid::default_for(std::span<const EmpiricalMeasure> ms) {
    if (ms.empty()) throw InvalidArgument("no measures supplied");
    double lo = ms.front().min(), hi = ms.front().max();
    for (const auto& m : ms) {
        lo = std::min(lo, m.min());
        hi = std::max(hi, m.max());
    }
    return default_for(Interval{lo, hi, false, false});
}

Selection select_optimal_transform(std::span<const EmpiricalMeasure> ms, const TransformGrid& grid,
                                   Estimator estimator) {
    if (ms.empty()) throw InvalidArgument("no measures supplied");
    if (grid.candidates.empty()) throw EmptyGrid("transform grid has no candidates");
    for (const auto& m : ms)
        if (!grid.domain_filter.contains(m.min()) || !grid.domain_filter.contains(m.max()))
            throw DomainError("measure support outside grid domain filter " + grid.domain_filter.str());
    for (const auto& c : grid.candidates)
        if (!c.domain().includes(grid.domain_filter))
            throw DomainError(c.name() + " is not defined on " + grid.domain_filter.str());

    const std::size_t k = grid.candidates.size();
    std::vector<Evaluated> results(k);
    parallel_for(k, [&](std::size_t i) { results[i] = evaluate(ms, grid.candidates[i], estimator); });

    Selection sel;
    for (std::size_t i = 0; i < k; ++i)
        sel.table.push_back({grid.candidates[i], results[i].value, results[i].raw, false});

    if (grid.refine_box_cox) {
        // Best Box-Cox member and the sorted distinct exponents around it.
        std::vector<double> lambdas;
        std::optional<std::size_t> best_bc;
        for (std::size_t i = 0; i < k; ++i) {
            double l;
            if (!box_cox_exponent(grid.candidates[i], l)) continue;
            lambdas.push_back(l);
            if (!best_bc || results[i].value < results[*best_bc].value) best_bc = i;
        }
        std::sort(lambdas.begin(), lambdas.end());
        lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
        if (best_bc && lambdas.size() >= 2) {
            const CoordinateTransform& seed = grid.candidates[*best_bc];
            double l0;
            box_cox_exponent(seed, l0);
            const auto pos = static_cast<std::size_t>(
                std::lower_bound(lambdas.begin(), lambdas.end(), l0) - lambdas.begin());
            double lo = lambdas[pos == 0 ? 0 : pos - 1];
            double hi = lambdas[std::min(pos + 1, lambdas.size() - 1)];

            auto objective = [&](double l) {
                return evaluate(ms, with_box_cox_exponent(seed, l), estimator).value;
            };
            const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
            double f1 = objective(x1), f2 = objective(x2);
            for (int it = 0; it < kGoldenSectionIterations; ++it) {
                if (f1 <= f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - inv_phi * (hi - lo);
                    f1 = objective(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + inv_phi * (hi - lo);
                    f2 = objective(x2);
                }
            }
            const double l_star = f1 <= f2 ? x1 : x2;
            if (!std::binary_search(lambdas.begin(), lambdas.end(), l_star)) {
                const auto refined = with_box_cox_exponent(seed, l_star);
                const auto r = evaluate(ms, refined, estimator);
                sel.table.push_back({refined, r.value, r.raw, true});
            }
        }
    }

    double v_min = sel.table.front().value;
    for (const auto& row : sel.table) v_min = std::min(v_min, row.value);
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < sel.table.size(); ++i) {
        const double v = sel.table[i].value;
        if (!(v == v_min || std::abs(v - v_min) <= 1e-12 * std::abs(v_min))) continue;
        if (!pick || tie_rank(sel.table[i].transform) < tie_rank(sel.table[*pick].transform)) pick = i;
    }
    const auto& won = sel.table[*pick];
    sel.best = won.transform;
    sel.value = won.value;
    sel.raw_value = won.raw_value;
    double l;
    if (box_cox_exponent(won.transform, l)) sel.lambda_hat = l;
    return sel;
}

CoordinateTransform catalog_optimal(std::string_view family, const std::map<std::string, double>& params) {
    auto need = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end()) throw InvalidArgument("family " + std::string(family) + " needs '" + key + "'");
        return it->second;
    };
    if (family == "gaussian") return CoordinateTransform::identity();
    if (family == "lognormal" || family == "pareto") return CoordinateTransform::log();
    if (family == "beta") return CoordinateTransform::logit();
    if (family == "gamma") {
        const double shape = need("shape");
        if (!(shape > 0.0)) throw InvalidArgument("gamma shape must be > 0");
        return shape > 1.0 ? CoordinateTransform::box_cox(0.5) : CoordinateTransform::log();
    }
    if (family == "bounded_positive") {
        const double r = need("r");
        if (!(r > 1.0)) throw InvalidArgument("bounded_positive needs r = b/a > 1");
        return r > std::numbers::e * std::numbers::e ? CoordinateTransform::log()
                                                     : CoordinateTransform::identity();
    }
    throw UnknownFamily("'" + std::string(family) + "'");
}

std::string to_string(ExpFamily f) {
    switch (f) {
        case ExpFamily::Bernoulli: return "bernoulli";
        case ExpFamily::Poisson: return "poisson";
        case ExpFamily::Exponential: return "exponential";
        case ExpFamily::Gaussian: return "gaussian";
    }
    return "?";
}

void validate(const ExpFamilySpec& spec) {
    if (spec.alpha != -1 && spec.alpha != 0 && spec.alpha != 1)
        throw InvalidParameters("alpha must be -1, 0 or 1");
    const double v = spec.parameter;
    switch (spec.family) {
        case ExpFamily::Bernoulli:
            if (!(v > 0.0 && v < 1.0)) throw InvalidParameters("Bernoulli needs 0 < p < 1");
            break;
        case ExpFamily::Poisson:
        case ExpFamily::Exponential:
            if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParameters("rate must be > 0");
            break;
        case ExpFamily::Gaussian:
            if (!std::isfinite(v)) throw InvalidParameters("mean must be finite");
            break;
    }
}

double natural_parameter(const ExpFamilySpec& spec) {
    validate(spec);
    switch (spec.family) {
        case ExpFamily::Bernoulli: return std::log(spec.parameter / (1.0 - spec.parameter));
        case ExpFamily::Poisson: return std::log(spec.parameter);
        case ExpFamily::Exponential: return -spec.parameter;
        case ExpFamily::Gaussian: return spec.parameter;
    }
    return 0.0;
}

double mean_parameter(ExpFamily family, double theta) {
    if (!std::isfinite(theta)) throw DomainError("theta must be finite");
    switch (family) {
        case ExpFamily::Bernoulli:
            return theta >= 0.0 ? 1.0 / (1.0 + std::exp(-theta)) : std::exp(theta) / (1.0 + std::exp(theta));
        case ExpFamily::Poisson: return std::exp(theta);
        case ExpFamily::Exponential:
            if (!(theta < 0.0)) throw DomainError("exponential family needs theta < 0");
            return -1.0 / theta;
        case ExpFamily::Gaussian: return theta;
    }
    return 0.0;
}

double exp_family_coordinate(const ExpFamilySpec& spec, double theta) {
    validate(spec);
    const double grad = mean_parameter(spec.family, theta);
    switch (spec.alpha) {
        case 1: return theta;
        case -1: return grad;
        default: return 0.5 * (theta + grad);
    }
}

}  // namespace psiconc
