#include <cmath>

#include <gtest/gtest.h>

#include "psiconc/errors.hpp"
#include "psiconc/measure.hpp"

using namespace psiconc;

TEST(EmpiricalMeasure, SortsAndNormalizes) {
    const EmpiricalMeasure m({3.0, 1.0, 2.0}, {2.0, 1.0, 1.0});
    ASSERT_EQ(m.size(), 3u);
    EXPECT_EQ(m.points()[0], 1.0);
    EXPECT_EQ(m.points()[2], 3.0);
    EXPECT_DOUBLE_EQ(m.weights()[2], 0.5);
    double total = 0.0;
    for (double w : m.weights()) total += w;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_FALSE(m.uniform_weights());
}

TEST(EmpiricalMeasure, UniformWeights) {
    const EmpiricalMeasure m({5.0, 4.0, 4.0, 1.0});
    EXPECT_TRUE(m.uniform_weights());
    for (double w : m.weights()) EXPECT_EQ(w, 0.25);
    EXPECT_EQ(m.min(), 1.0);
    EXPECT_EQ(m.max(), 5.0);
    EXPECT_DOUBLE_EQ(mean(m), 3.5);
    EXPECT_DOUBLE_EQ(variance(m), (6.25 + 0.25 + 0.25 + 2.25) / 4.0);
}

TEST(EmpiricalMeasure, RejectsBadInput) {
    EXPECT_THROW(EmpiricalMeasure(std::vector<double>{}), EmptySample);
    EXPECT_THROW(EmpiricalMeasure({1.0, 2.0}, {1.0}), InvalidArgument);
    EXPECT_THROW(EmpiricalMeasure({1.0, 2.0}, {1.0, -1.0}), InvalidArgument);
    EXPECT_THROW(EmpiricalMeasure({1.0, 2.0}, {0.0, 0.0}), InvalidArgument);
}

TEST(EmpiricalMeasure, PushKeepsWeightsWithPoints) {
    const EmpiricalMeasure m({1.0, 2.0, 3.0}, {0.5, 0.3, 0.2});
    const auto pushed = m.push([](double x) { return -x; });
    EXPECT_EQ(pushed.points()[0], -3.0);
    EXPECT_EQ(pushed.weights()[0], m.weights()[2]);
    EXPECT_EQ(pushed.weights()[2], m.weights()[0]);
    EXPECT_THROW(m.push([](double x) { return std::log(x - 2.0); }), DomainError);
}
