#include "psiconc/diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "psiconc/errors.hpp"
#include "psiconc/normal.hpp"

namespace psiconc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Below this magnitude of lambda*log(x) the expm1/log1p forms are used; above
// it pow() keeps integer exponents exact (BoxCox(1) at 5 is exactly 4).
constexpr double kBoxCoxSeriesCut = 0.5;

double box_cox_forward(double lambda, double x) {
    if (lambda == 0.0) return std::log(x);
    const double lx = std::log(x);
    if (std::abs(lambda * lx) < kBoxCoxSeriesCut) return std::expm1(lambda * lx) / lambda;
    return (std::pow(x, lambda) - 1.0) / lambda;
}

double box_cox_inverse(double lambda, double y) {
    if (lambda == 0.0) return std::exp(y);
    const double t = lambda * y;
    if (std::abs(t) < kBoxCoxSeriesCut) return std::exp(std::log1p(t) / lambda);
    return std::pow(1.0 + t, 1.0 / lambda);
}

std::size_t segment_of(const std::vector<Knot>& k, double v, bool by_y) {
    auto key = [by_y](const Knot& kn) { return by_y ? kn.y : kn.x; };
    auto it = std::upper_bound(k.begin(), k.end(), v,
                               [&](double value, const Knot& kn) { return value < key(kn); });
    std::size_t idx = it == k.begin() ? 0 : static_cast<std::size_t>(it - k.begin()) - 1;
    return std::min(idx, k.size() - 2);
}

// Evaluates forward without domain checks; defined at the (possibly
// infinite) domain endpoints as the limit value.
double raw_forward(const CoordinateTransform& t, double x) {
    return std::visit(
        overloaded{
            [&](const maps::Identity&) { return x; },
            [&](const maps::Log&) { return std::log(x); },
            [&](const maps::BoxCox& b) { return box_cox_forward(b.lambda, x); },
            [&](const maps::Logit&) { return std::log(x / (1.0 - x)); },
            [&](const maps::Arctan&) { return std::atan(x); },
            [&](const maps::Affine& a) { return a.alpha * raw_forward(*a.inner, x) + a.beta; },
            [&](const maps::Gaussianizer& g) {
                const auto& k = *g.knots;
                const std::size_t i = segment_of(k, x, false);
                return k[i].y + (x - k[i].x) * ((k[i + 1].y - k[i].y) / (k[i + 1].x - k[i].x));
            },
            [&](const maps::Composed& c) { return raw_forward(*c.outer, raw_forward(*c.inner, x)); },
        },
        t.node());
}

double raw_inverse(const CoordinateTransform& t, double y) {
    return std::visit(
        overloaded{
            [&](const maps::Identity&) { return y; },
            [&](const maps::Log&) { return std::exp(y); },
            [&](const maps::BoxCox& b) { return box_cox_inverse(b.lambda, y); },
            [&](const maps::Logit&) {
                if (y >= 0.0) return 1.0 / (1.0 + std::exp(-y));
                const double e = std::exp(y);
                return e / (1.0 + e);
            },
            [&](const maps::Arctan&) { return std::tan(y); },
            [&](const maps::Affine& a) { return raw_inverse(*a.inner, (y - a.beta) / a.alpha); },
            [&](const maps::Gaussianizer& g) {
                const auto& k = *g.knots;
                const std::size_t i = segment_of(k, y, true);
                return k[i].x + (y - k[i].y) * ((k[i + 1].x - k[i].x) / (k[i + 1].y - k[i].y));
            },
            [&](const maps::Composed& c) { return raw_inverse(*c.inner, raw_inverse(*c.outer, y)); },
        },
        t.node());
}

double raw_derivative(const CoordinateTransform& t, double x) {
    return std::visit(
        overloaded{
            [&](const maps::Identity&) { return 1.0; },
            [&](const maps::Log&) { return 1.0 / x; },
            [&](const maps::BoxCox& b) {
                return b.lambda == 0.0 ? 1.0 / x : std::pow(x, b.lambda - 1.0);
            },
            [&](const maps::Logit&) { return 1.0 / (x * (1.0 - x)); },
            [&](const maps::Arctan&) { return 1.0 / (1.0 + x * x); },
            [&](const maps::Affine& a) { return a.alpha * raw_derivative(*a.inner, x); },
            [&](const maps::Gaussianizer& g) {
                const auto& k = *g.knots;
                const std::size_t i = segment_of(k, x, false);
                return (k[i + 1].y - k[i].y) / (k[i + 1].x - k[i].x);
            },
            [&](const maps::Composed& c) {
                return raw_derivative(*c.outer, raw_forward(*c.inner, x)) *
                       raw_derivative(*c.inner, x);
            },
        },
        t.node());
}

}  // namespace

bool Interval::contains(double x) const noexcept {
    const bool above = lo_open ? x > lo : x >= lo;
    const bool below = hi_open ? x < hi : x <= hi;
    return above && below;
}

bool Interval::includes(const Interval& o) const noexcept {
    const bool lower = o.lo > lo || (o.lo == lo && (!lo_open || o.lo_open));
    const bool upper = o.hi < hi || (o.hi == hi && (!hi_open || o.hi_open));
    return lower && upper;
}

std::string Interval::str() const {
    return std::string(lo_open ? "(" : "[") + num(lo) + ", " + num(hi) + (hi_open ? ")" : "]");
}

SupportInterval::SupportInterval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw InvalidArgument("support interval needs finite a < b, got [" + num(a) + ", " +
                              num(b) + "]");
}

CoordinateTransform CoordinateTransform::box_cox(double lambda) {
    if (!std::isfinite(lambda)) throw InvalidArgument("Box-Cox exponent must be finite");
    if (lambda == 0.0) return log();
    return CoordinateTransform(maps::BoxCox{lambda});
}

CoordinateTransform CoordinateTransform::affine(double alpha, double beta, CoordinateTransform inner) {
    if (alpha == 0.0 || !std::isfinite(alpha) || !std::isfinite(beta))
        throw InvalidArgument("affine map needs finite alpha != 0 and finite beta");
    return CoordinateTransform(
        maps::Affine{alpha, beta, std::make_shared<const CoordinateTransform>(std::move(inner))});
}

CoordinateTransform CoordinateTransform::gaussianizer(std::vector<Knot> knots) {
    if (knots.size() < 2) throw InvalidArgument("gaussianizer needs at least two knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i].x) || !std::isfinite(knots[i].y))
            throw InvalidArgument("gaussianizer knots must be finite");
        if (i > 0 && !(knots[i].x > knots[i - 1].x && knots[i].y > knots[i - 1].y))
            throw InvalidArgument("gaussianizer knots must be strictly increasing");
    }
    return CoordinateTransform(
        maps::Gaussianizer{std::make_shared<const std::vector<Knot>>(std::move(knots))});
}

Interval CoordinateTransform::domain() const {
    return std::visit(
        overloaded{
            [](const maps::Log&) { return Interval{0.0, kInf}; },
            [](const maps::BoxCox& b) {
                return b.lambda >= 1.0 ? Interval{0.0, kInf, false, true} : Interval{0.0, kInf};
            },
            [](const maps::Logit&) { return Interval{0.0, 1.0}; },
            [](const maps::Affine& a) { return a.inner->domain(); },
            [](const maps::Composed& c) { return c.inner->domain(); },
            [](const auto&) { return Interval{-kInf, kInf}; },
        },
        node_);
}

Interval CoordinateTransform::image() const {
    const Interval d = domain();
    const double f_lo = raw_forward(*this, d.lo);
    const double f_hi = raw_forward(*this, d.hi);
    if (increasing()) return Interval{f_lo, f_hi, d.lo_open, d.hi_open};
    return Interval{f_hi, f_lo, d.hi_open, d.lo_open};
}

bool CoordinateTransform::increasing() const {
    return std::visit(overloaded{
                          [](const maps::Affine& a) { return (a.alpha > 0) == a.inner->increasing(); },
                          [](const maps::Composed& c) {
                              return c.outer->increasing() == c.inner->increasing();
                          },
                          [](const auto&) { return true; },
                      },
                      node_);
}

std::string CoordinateTransform::name() const {
    return std::visit(
        overloaded{
            [](const maps::Identity&) { return std::string("identity"); },
            [](const maps::Log&) { return std::string("log"); },
            [](const maps::BoxCox& b) { return "boxcox(" + num(b.lambda) + ")"; },
            [](const maps::Logit&) { return std::string("logit"); },
            [](const maps::Arctan&) { return std::string("arctan"); },
            [](const maps::Affine& a) {
                return num(a.alpha) + "*" + a.inner->name() + (a.beta < 0 ? "" : "+") + num(a.beta);
            },
            [](const maps::Gaussianizer& g) {
                return "gaussianizer(" + std::to_string(g.knots->size()) + " knots)";
            },
            [](const maps::Composed& c) { return c.outer->name() + "(" + c.inner->name() + ")"; },
        },
        node_);
}

double forward(const CoordinateTransform& t, double x) {
    if (!t.domain().contains(x))
        throw DomainError(num(x) + " outside domain " + t.domain().str() + " of " + t.name());
    return raw_forward(t, x);
}

double inverse(const CoordinateTransform& t, double y) {
    const Interval im = t.image();
    if (!im.contains(y))
        throw RangeError(num(y) + " outside image " + im.str() + " of " + t.name());
    return raw_inverse(t, y);
}

double derivative(const CoordinateTransform& t, double x) {
    if (!t.domain().contains(x))
        throw DomainError(num(x) + " outside domain " + t.domain().str() + " of " + t.name());
    return raw_derivative(t, x);
}

CoordinateTransform compose(const CoordinateTransform& outer, const CoordinateTransform& inner) {
    // Identity is neutral on either side; its image is all of R, so it is
    // exempt from the image/domain check.
    if (outer.as<maps::Identity>()) return inner;
    if (inner.as<maps::Identity>()) return outer;
    if (!outer.domain().includes(inner.image()))
        throw DomainError("image " + inner.image().str() + " of " + inner.name() +
                          " is not inside domain " + outer.domain().str() + " of " + outer.name());
    if (const auto* a = outer.as<maps::Affine>())
        return CoordinateTransform::affine(a->alpha, a->beta, compose(*a->inner, inner));
    return CoordinateTransform(maps::Composed{std::make_shared<const CoordinateTransform>(outer),
                                              std::make_shared<const CoordinateTransform>(inner)});
}

CoordinateTransform gaussianize(const EmpiricalMeasure& samples) {
    const std::size_t n = samples.size();
    if (n < 10) throw InsufficientData("gaussianize needs n >= 10, got " + std::to_string(n));
    const auto x = samples.points();
    const auto w = samples.weights();

    std::vector<Knot> knots;
    std::size_t i = 0;
    double cum = 0.0;
    while (i < n) {
        std::size_t j = i;
        double z_sum = 0.0, w_sum = 0.0;
        while (j < n && x[j] == x[i]) {
            const double u = samples.uniform_weights()
                                 ? (static_cast<double>(j) + 0.5) / static_cast<double>(n)
                                 : cum + 0.5 * w[j];
            const double wj = samples.uniform_weights() ? 1.0 : w[j];
            z_sum += wj * normal_quantile(u);
            w_sum += wj;
            cum += w[j];
            ++j;
        }
        knots.push_back({x[i], z_sum / w_sum});
        i = j;
    }
    if (knots.size() < 10)
        throw DegenerateData("gaussianize needs >= 10 distinct values, got " +
                             std::to_string(knots.size()));
    return CoordinateTransform::gaussianizer(std::move(knots));
}

EmpiricalMeasure push(const EmpiricalMeasure& m, const CoordinateTransform& t) {
    const Interval d = t.domain();
    for (double x : m.points())
        if (!d.contains(x))
            throw DomainError("point " + num(x) + " outside domain " + d.str() + " of " + t.name());
    return m.push([&](double x) { return raw_forward(t, x); });
}

void require_within_domain(const CoordinateTransform& t, const SupportInterval& iv) {
    const Interval d = t.domain();
    if (!d.contains(iv.a()) || !d.contains(iv.b()))
        throw DomainError("[" + num(iv.a()) + ", " + num(iv.b()) + "] not inside domain " + d.str() +
                          " of " + t.name());
}

bool box_cox_exponent(const CoordinateTransform& t, double& lambda) {
    if (const auto* b = t.as<maps::BoxCox>()) {
        lambda = b->lambda;
        return true;
    }
    if (t.as<maps::Log>()) {
        lambda = 0.0;
        return true;
    }
    if (const auto* a = t.as<maps::Affine>()) return box_cox_exponent(*a->inner, lambda);
    return false;
}

CoordinateTransform with_box_cox_exponent(const CoordinateTransform& t, double lambda) {
    if (const auto* a = t.as<maps::Affine>())
        return CoordinateTransform::affine(a->alpha, a->beta, with_box_cox_exponent(*a->inner, lambda));
    if (t.as<maps::BoxCox>() || t.as<maps::Log>()) return CoordinateTransform::box_cox(lambda);
    throw InvalidArgument(t.name() + " is not a Box-Cox member");
}

}  // namespace psiconc
