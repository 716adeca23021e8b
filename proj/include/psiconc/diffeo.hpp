#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "psiconc/measure.hpp"

namespace psiconc {

/// Interval of the extended real line with independently open/closed ends.
struct Interval {
    double lo;
    double hi;
    bool lo_open = true;
    bool hi_open = true;

    bool contains(double x) const noexcept;
    /// True if every point of `other` lies in *this.
    bool includes(const Interval& other) const noexcept;
    std::string str() const;
};

/// Closed support [a, b] with a < b, both finite.
class SupportInterval {
public:
    SupportInterval(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double width() const noexcept { return b_ - a_; }
    /// b / a; only meaningful for a > 0.
    double ratio() const noexcept { return b_ / a_; }

private:
    double a_;
    double b_;
};

struct Knot {
    double x;
    double y;
};

class CoordinateTransform;
using TransformPtr = std::shared_ptr<const CoordinateTransform>;

namespace maps {
struct Identity {};
struct Log {};
/// (x^lambda - 1)/lambda; lambda == 0 dispatches to Log.
struct BoxCox {
    double lambda;
};
struct Logit {};
struct Arctan {};
/// alpha * inner(x) + beta.
struct Affine {
    double alpha;
    double beta;
    TransformPtr inner;
};
/// Monotone piecewise-linear interpolation of knots, linear extrapolation.
struct Gaussianizer {
    std::shared_ptr<const std::vector<Knot>> knots;
};
/// outer(inner(x)) for pairs that do not fold into an Affine wrapper.
struct Composed {
    TransformPtr outer;
    TransformPtr inner;
};
}  // namespace maps

/// A strictly monotone smooth map of an open interval onto an interval.
/// Immutable value type; copies share their sub-transforms.
class CoordinateTransform {
public:
    using Node = std::variant<maps::Identity, maps::Log, maps::BoxCox, maps::Logit,
                              maps::Arctan, maps::Affine, maps::Gaussianizer,
                              maps::Composed>;

    CoordinateTransform() : node_(maps::Identity{}) {}

    static CoordinateTransform identity() { return CoordinateTransform(maps::Identity{}); }
    static CoordinateTransform log() { return CoordinateTransform(maps::Log{}); }
    static CoordinateTransform box_cox(double lambda);
    static CoordinateTransform logit() { return CoordinateTransform(maps::Logit{}); }
    static CoordinateTransform arctan() { return CoordinateTransform(maps::Arctan{}); }
    /// Throws InvalidArgument when alpha is zero or either coefficient is not finite.
    static CoordinateTransform affine(double alpha, double beta, CoordinateTransform inner);
    /// Throws InvalidArgument unless knots are strictly increasing in x and y
    /// and there are at least two of them.
    static CoordinateTransform gaussianizer(std::vector<Knot> knots);

    const Node& node() const noexcept { return node_; }

    template <typename M>
    const M* as() const noexcept { return std::get_if<M>(&node_); }

    /// Open (or half-open) interval on which forward is defined.
    Interval domain() const;
    /// forward(domain()), with limits at open ends.
    Interval image() const;
    bool increasing() const;
    /// Short human-readable label, e.g. "boxcox(0.5)" or "2*log+1".
    std::string name() const;

private:
    explicit CoordinateTransform(Node n) : node_(std::move(n)) {}
    friend CoordinateTransform compose(const CoordinateTransform&, const CoordinateTransform&);

    Node node_;
};

/// psi(x). Throws DomainError when x is outside t.domain().
double forward(const CoordinateTransform& t, double x);
/// psi^{-1}(y). Throws RangeError when y is outside t.image().
double inverse(const CoordinateTransform& t, double y);
/// dpsi/dx at x. Throws DomainError as forward.
double derivative(const CoordinateTransform& t, double x);

/// outer o inner. Affine outers fold into AffineOf(alpha, beta, inner) so that
/// forward(result, x) and forward(outer, forward(inner, x)) share one
/// arithmetic path. Throws DomainError unless inner.image() is inside
/// outer.domain().
CoordinateTransform compose(const CoordinateTransform& outer, const CoordinateTransform& inner);

/// Rank-based Gaussianizer: knots (x_(i), Phi^{-1}(u_i)) over the distinct
/// sorted points, u_i the weighted mid-rank ((i - 0.5)/n for uniform weights);
/// duplicates collapse to the mean of their Phi^{-1} ranks.
/// Throws InsufficientData if n < 10, DegenerateData if fewer than 10
/// distinct values.
CoordinateTransform gaussianize(const EmpiricalMeasure& samples);

/// Pushes a measure through t. Throws DomainError on points outside t.domain().
EmpiricalMeasure push(const EmpiricalMeasure& m, const CoordinateTransform& t);

/// Throws DomainError unless [a, b] lies in t.domain().
void require_within_domain(const CoordinateTransform& t, const SupportInterval& iv);

/// Box-Cox exponent of t, looking through Affine wrappers. Log counts as 0.
/// Returns false when t is not a Box-Cox/Log member.
bool box_cox_exponent(const CoordinateTransform& t, double& lambda);

/// Rebuilds t (Affine wrappers preserved) with its Box-Cox core replaced by
/// BoxCox(lambda). Requires box_cox_exponent(t) to succeed.
CoordinateTransform with_box_cox_exponent(const CoordinateTransform& t, double lambda);

}  // namespace psiconc
