#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "psiconc/bounds.hpp"
#include "psiconc/errors.hpp"

using namespace psiconc;

namespace {
using CT = CoordinateTransform;
constexpr double kE = std::numbers::e;
}  // namespace

TEST(HoeffdingConstant, Examples) {
    EXPECT_EQ(hoeffding_constant(CT::identity(), SupportInterval(0, 1)), 0.25);
    EXPECT_NEAR(hoeffding_constant(CT::log(), SupportInterval(1, kE * kE)), 1.0, 1e-15);
    const double l = std::log(1000.0);
    EXPECT_NEAR(hoeffding_constant(CT::log(), SupportInterval(1, 1000)), l * l / 4.0, 1e-12);
    EXPECT_NEAR(hoeffding_constant(CT::log(), SupportInterval(1, 1000)), 11.929, 1e-3);
    EXPECT_THROW(hoeffding_constant(CT::log(), SupportInterval(-1, 1)), DomainError);
}

TEST(HoeffdingConstant, EqualsIdentityConstantOnTransformedInterval) {
    const std::vector<CT> ts = {CT::log(), CT::box_cox(0.5), CT::box_cox(-1.0), CT::box_cox(3.0), CT::arctan()};
    const std::vector<std::pair<double, double>> ivs = {{0.5, 2.0}, {1.0, 1000.0}, {3.0, 3.5}, {0.01, 0.02}};
    for (const auto& t : ts) {
        for (auto [a, b] : ivs) {
            const double pa = forward(t, a), pb = forward(t, b);
            EXPECT_EQ(hoeffding_constant(t, SupportInterval(a, b)),
                      hoeffding_constant(CT::identity(), SupportInterval(pa, pb)))
                << t.name();
        }
    }
}

TEST(HoeffdingConstant, AffineLaw) {
    for (double alpha : {-3.0, -0.5, 0.25, 2.0, 10.0}) {
        for (const auto& t : {CT::log(), CT::box_cox(0.5), CT::arctan()}) {
            const SupportInterval iv(0.3, 7.0);
            const double base = hoeffding_constant(t, iv);
            const double scaled = hoeffding_constant(CT::affine(alpha, 1.5, t), iv);
            EXPECT_NEAR(scaled / (alpha * alpha * base), 1.0, 1e-12);
        }
    }
}

TEST(MasterTailBound, Examples) {
    const std::vector<Range> one = {{0.0, 1.0}};
    EXPECT_EQ(master_tail_bound(1.0, one, 0.0), 1.0);
    EXPECT_NEAR(master_tail_bound(1.0, one, 0.5), std::exp(-0.5), 1e-15);
    const std::vector<Range> four(4, Range{2.0, 3.0});
    EXPECT_NEAR(master_tail_bound(2.0, four, 2.0), std::exp(-0.5), 1e-15);
}

TEST(MasterTailBound, DegenerateAndInvalid) {
    const std::vector<Range> point = {{1.0, 1.0}};
    EXPECT_EQ(master_tail_bound(1.0, point, 0.0), 1.0);
    EXPECT_EQ(master_tail_bound(1.0, point, 1e-9), 0.0);
    const std::vector<Range> one = {{0.0, 1.0}};
    EXPECT_THROW(master_tail_bound(0.0, one, 1.0), InvalidArgument);
    EXPECT_THROW(master_tail_bound(1.0, one, -1.0), InvalidArgument);
}

TEST(ImprovementFactor, Examples) {
    EXPECT_NEAR(improvement_factor(SupportInterval(1, 1000)), 20915.0, 1.0);
    const double e2 = kE * kE;
    EXPECT_NEAR(improvement_factor(SupportInterval(1, e2)), (e2 - 1) * (e2 - 1) / 4.0, 1e-12);
    EXPECT_NEAR(improvement_factor(SupportInterval(1, e2)), 10.21, 0.01);
    EXPECT_NEAR(improvement_factor(SupportInterval(2, 2000)) / improvement_factor(SupportInterval(1, 1000)), 4.0,
                1e-12);
    EXPECT_THROW(improvement_factor(SupportInterval(0, 1)), DomainError);
}

TEST(RecommendCoordinate, Examples) {
    const auto big = recommend_coordinate(SupportInterval(1, 1000));
    EXPECT_EQ(big.choice, Coordinate::Log);
    EXPECT_NEAR(big.normalized_ratio, 998001.0 / std::pow(std::log(1000.0), 2), 1e-6);
    EXPECT_NEAR(big.identity_constant, 998001.0 / 4.0, 1e-9);

    const auto tiny = recommend_coordinate(SupportInterval(1, 1.0001));
    EXPECT_EQ(tiny.choice, Coordinate::Identity);
    EXPECT_NEAR(tiny.normalized_ratio, 1.0001, 1e-6);
    EXPECT_TRUE(tiny.ratio_prefers_log);
    EXPECT_NEAR(tiny.stated_threshold, kE * kE, 1e-15);

    const auto hundred = recommend_coordinate(SupportInterval(1, 100));
    EXPECT_EQ(hundred.choice, Coordinate::Log);
    EXPECT_NEAR(hundred.normalized_ratio, 462.2, 0.1);

    // The ratio is scale free; the raw constants are not.
    const auto scaled = recommend_coordinate(SupportInterval(10, 1000));
    EXPECT_NEAR(scaled.normalized_ratio, hundred.normalized_ratio, 1e-9);
    EXPECT_NEAR(scaled.identity_constant, 100.0 * hundred.identity_constant, 1e-6);
    EXPECT_THROW(recommend_coordinate(SupportInterval(-1, 1)), DomainError);
}

TEST(ProductTailBound, Examples) {
    const std::vector<SupportInterval> four(4, SupportInterval(1, kE));
    EXPECT_EQ(product_tail_bound(four, 1.0).log_bound, 1.0);
    EXPECT_NEAR(product_tail_bound(four, 2.0).log_bound, 2.0 * std::exp(-2.0), 1e-15);
    const auto zero = product_tail_bound(four, 0.0);
    EXPECT_EQ(zero.log_bound, 1.0);
    EXPECT_EQ(zero.classical_bound, 1.0);
    const std::vector<SupportInterval> bad = {SupportInterval(-1, 1)};
    EXPECT_THROW(product_tail_bound(bad, 1.0), DomainError);
}

TEST(ProductTailBound, LogNeverWorseThanClassical) {
    for (double r : {1.001, 1.5, 2.0, 7.0, 100.0, 1e4}) {
        for (double a : {0.01, 1.0, 50.0}) {
            const std::vector<SupportInterval> ivs(5, SupportInterval(a, a * r));
            for (double t = 0.0; t < 30.0; t += 0.37) {
                const auto b = product_tail_bound(ivs, t);
                EXPECT_LE(b.log_bound, b.classical_bound);
            }
        }
    }
}

TEST(MaxTailBound, Examples) {
    EXPECT_NEAR(max_tail_bound(100, SupportInterval(1, kE), 0.5, Coordinate::Log), std::exp(-50.0), 1e-30);
    EXPECT_EQ(max_tail_bound(7, SupportInterval(1, 2), 0.0, Coordinate::Log), 1.0);
    EXPECT_NEAR(max_tail_bound(1, SupportInterval(0, 1), 1.0, Coordinate::Identity), std::exp(-2.0), 1e-15);
    EXPECT_THROW(max_tail_bound(1, SupportInterval(0, 1), 1.0, Coordinate::Log), DomainError);
}

TEST(TailBoundReport, UnitAtZeroAndNonIncreasing) {
    const SupportInterval iv(1, 1000);
    const std::vector<TailBoundReport> reps = {
        sum_bound_report(CT::identity(), iv, 50), sum_bound_report(CT::log(), iv, 3),
        product_bound_report(iv, 50, Coordinate::Log), product_bound_report(iv, 50, Coordinate::Identity),
        max_bound_report(iv, 50, Coordinate::Log), max_bound_report(iv, 50, Coordinate::Identity)};
    for (const auto& r : reps) {
        EXPECT_EQ(r.bound_at(0.0), 1.0) << r.name;
        double prev = 1.0;
        for (double k = 0.0; k <= 8.0; k += 0.05) {
            const double v = r.bound_at(k * std::sqrt(r.sigma_sq));
            EXPECT_LE(v, prev) << r.name;
            EXPECT_LE(v, 1.0);
            EXPECT_GE(v, 0.0);
            prev = v;
        }
        EXPECT_FALSE(r.formula.empty());
        EXPECT_FALSE(r.assumptions.empty());
    }
}

TEST(TailBoundReport, SumBoundIsTwiceMasterBound) {
    const auto r = sum_bound_report(CT::log(), SupportInterval(1, 10), 4);
    const double w = std::log(10.0);
    const double t = 3.0;
    EXPECT_NEAR(r.bound_at(t), 2.0 * std::exp(-2.0 * t * t / (4.0 * w * w)), 1e-15);
    EXPECT_NEAR(r.sigma_sq, 4.0 * w * w / 4.0, 1e-12);
}
