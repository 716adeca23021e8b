#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "psiconc/errors.hpp"
#include "psiconc/montecarlo.hpp"
#include "psiconc/normal.hpp"
#include "psiconc/parallel.hpp"

using namespace psiconc;

namespace {
using CT = CoordinateTransform;
}

TEST(Random, SplitSeedIsDeterministicAndDistinct) {
    EXPECT_EQ(split_seed(42, 3), split_seed(42, 3));
    EXPECT_NE(split_seed(42, 3), split_seed(42, 4));
    EXPECT_NE(split_seed(42, 3), split_seed(43, 3));
    Rng a(1), b(1);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform_open();
        EXPECT_EQ(u, b.uniform_open());
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
    Rng c(9);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(c.below(7), 7u);
}

TEST(ParallelFor, SameResultForAnyWorkerCount) {
    std::vector<double> one(1000), four(1000);
    parallel_for(1000, [&](std::size_t i) { one[i] = std::sin(static_cast<double>(i)); }, 1);
    parallel_for(1000, [&](std::size_t i) { four[i] = std::sin(static_cast<double>(i)); }, 4);
    EXPECT_EQ(one, four);
}

TEST(Sample, DeterministicAndInSupport) {
    const DistributionSpec u(dist::Uniform{1.0, 2.0});
    EXPECT_EQ(sample(u, 500, 17), sample(u, 500, 17));
    EXPECT_NE(sample(u, 500, 17), sample(u, 500, 18));
    const std::vector<DistributionSpec> specs = {
        DistributionSpec(dist::Uniform{1.0, 1000.0}),     DistributionSpec(dist::TwoPoint{1.0, 1000.0, 0.5}),
        DistributionSpec(dist::LogNormal{0.0, 1.0}),       DistributionSpec(dist::Gamma{0.5, 2.0}),
        DistributionSpec(dist::ParetoTruncated{1.0, 1.0, 1000.0}), DistributionSpec(dist::Beta{0.5, 0.5})};
    for (const auto& s : specs) {
        const auto m = sample(s, 2000, 1);
        const Interval sup = s.support();
        for (double x : m.points()) EXPECT_TRUE(sup.contains(x)) << s.name() << " " << x;
    }
}

TEST(Sample, TwoPointMean) {
    const auto m = sample(DistributionSpec(dist::TwoPoint{0.0, 1.0, 0.5}), 1000000, 5);
    EXPECT_NEAR(mean(m), 0.5, 0.002);
}

TEST(Sample, InvalidParameters) {
    EXPECT_THROW(DistributionSpec(dist::Gamma{-1.0, 1.0}), InvalidParameters);
    EXPECT_THROW(DistributionSpec(dist::Uniform{2.0, 1.0}), InvalidParameters);
    EXPECT_THROW(DistributionSpec(dist::TwoPoint{0.0, 1.0, 1.5}), InvalidParameters);
    EXPECT_THROW(DistributionSpec(dist::ParetoTruncated{1.0, 0.0, 10.0}), InvalidParameters);
    EXPECT_THROW(DistributionSpec(dist::Beta{0.0, 1.0}), InvalidParameters);
    EXPECT_THROW(DistributionSpec(dist::LogNormal{0.0, 0.0}), InvalidParameters);
}

TEST(Quantile, MatchesClosedFormCdfs) {
    const DistributionSpec beta(dist::Beta{2.0, 3.0});
    const DistributionSpec gamma(dist::Gamma{2.0, 1.5});
    const DistributionSpec pareto(dist::ParetoTruncated{1.5, 1.0, 50.0});
    const DistributionSpec logn(dist::LogNormal{0.3, 0.7});
    for (double u = 0.01; u < 1.0; u += 0.01) {
        const double xb = beta.quantile(u);
        EXPECT_NEAR(6 * xb * xb - 8 * xb * xb * xb + 3 * xb * xb * xb * xb, u, 1e-10);
        const double xg = gamma.quantile(u) / 1.5;
        EXPECT_NEAR(1.0 - std::exp(-xg) * (1.0 + xg), u, 1e-10);
        const double xp = pareto.quantile(u);
        EXPECT_NEAR((1.0 - std::pow(xp, -1.5)) / (1.0 - std::pow(50.0, -1.5)), u, 1e-12);
        EXPECT_NEAR(normal_cdf((std::log(logn.quantile(u)) - 0.3) / 0.7), u, 1e-12);
    }
}

TEST(VerifyBound, ZeroDeviationRowIsOne) {
    const DistributionSpec spec(dist::Uniform{1.0, 1000.0});
    const std::vector<double> t = {0.0};
    for (auto [stat, tr] : {std::pair{Statistic::Sum, CT::identity()}, std::pair{Statistic::Product, CT::log()},
                            std::pair{Statistic::Max, CT::log()}}) {
        const auto r = verify_bound(spec, 10, stat, tr, t, 2000, 1);
        EXPECT_EQ(r.empirical_tail[0], 1.0);
        EXPECT_EQ(r.bound[0], 1.0);
        EXPECT_TRUE(r.dominated[0]);
    }
}

TEST(VerifyBound, BitIdenticalForSameSeed) {
    const DistributionSpec spec(dist::ParetoTruncated{1.0, 1.0, 1000.0});
    const auto grid = default_t_grid(spec, 20, Statistic::Product, CT::log());
    const auto a = verify_bound(spec, 20, Statistic::Product, CT::log(), grid, 5000, 77);
    const auto b = verify_bound(spec, 20, Statistic::Product, CT::log(), grid, 5000, 77);
    EXPECT_EQ(a.empirical_tail, b.empirical_tail);
    EXPECT_EQ(a.center, b.center);
    EXPECT_EQ(a.mgf_sigma_sq, b.mgf_sigma_sq);
    const auto c = verify_bound(spec, 20, Statistic::Product, CT::log(), grid, 5000, 78);
    EXPECT_NE(a.center, c.center);
}

TEST(VerifyBound, ProductLogDominates) {
    const DistributionSpec spec(dist::Uniform{1.0, 1000.0});
    const std::vector<double> t = {std::sqrt(50.0) * 2.0};
    const auto r = verify_bound(spec, 50, Statistic::Product, CT::log(), t, 100000, 3);
    EXPECT_TRUE(r.all_dominated());
    EXPECT_LE(r.empirical_tail[0], r.bound[0]);
}

TEST(VerifyBound, TwoPointSumIsExtremal) {
    for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{1.0, 10.0}}) {
        const DistributionSpec two(dist::TwoPoint{a, b, 0.5});
        const auto r = verify_bound(two, 1, Statistic::Sum, CT::identity(), std::vector<double>{0.0}, 100000, 4);
        EXPECT_NEAR(r.mgf_sigma_sq / ((b - a) * (b - a) / 4.0), 1.0, 0.05);
        const DistributionSpec uni(dist::Uniform{a, b});
        const auto ru = verify_bound(uni, 1, Statistic::Sum, CT::identity(), std::vector<double>{0.0}, 100000, 4);
        EXPECT_LT(ru.mgf_sigma_sq, r.mgf_sigma_sq);
    }
}

TEST(VerifyBound, StatisticTransformCompatibility) {
    const DistributionSpec spec(dist::Uniform{-1.0, 1.0});
    const std::vector<double> t = {0.0};
    EXPECT_THROW(verify_bound(spec, 5, Statistic::Product, CT::log(), t, 100, 1), DomainError);
    EXPECT_THROW(verify_bound(DistributionSpec(dist::Uniform{1.0, 2.0}), 5, Statistic::Max, CT::arctan(), t, 100, 1),
                 InvalidArgument);
}

TEST(EnlargementCheck, StandardNormalMedianSet) {
    const auto m = sample(DistributionSpec(dist::LogNormal{0.0, 1.0}), 20000, 2).push([](double x) {
        return std::log(x);
    });
    const std::vector<double> eps = {0.0, 1.0, 6.0};
    const auto rows = enlargement_check(m, eps, 10000, 9);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[0].measured, 0.5, 3.0 * std::sqrt(0.25 / 10000.0));
    EXPECT_GE(rows[1].measured, normal_cdf(1.0) - 3.0 * rows[1].std_err);
    EXPECT_EQ(rows[2].measured, 1.0);
    EXPECT_NEAR(rows[2].floor, 1.0, 1e-8);
    EXPECT_THROW(enlargement_check(EmpiricalMeasure({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}), eps, 5, 1),
                 InsufficientData);
}
