#include <gtest/gtest.h>

#include "rangewalk/rangewalk.hpp"
#include "support.hpp"

using namespace rangewalk;

TEST(TailEstimate, UsesUpperHalfWindow)
{
    const std::vector<std::pair<std::uint64_t, double>> s{{1, 9.0}, {2, 5.0}, {4, 0.3}, {8, 0.5}, {16, 0.4}};
    const auto t = tail_limit_estimate(s);
    EXPECT_EQ(t.window_lo, 8u);
    EXPECT_EQ(t.window_hi, 16u);
    EXPECT_EQ(t.liminf_hat, 0.4);
    EXPECT_EQ(t.limsup_hat, 0.5);
}

TEST(TailEstimate, NeedsFourPoints)
{
    EXPECT_THROW(tail_limit_estimate({{1, 0.0}, {2, 0.0}, {4, 0.0}}), InsufficientDataError);
}

TEST(SpeedReport, UnitLinearDrift)
{
    LinearDriftWalk w(1, {1}, 1 << 16);
    const auto s = speed_report(w, 1 << 16, CheckpointSchedule::dyadic());
    EXPECT_EQ(s.rows.size(), 17u);
    EXPECT_EQ(s.violation_count, 0u);
    for (const auto& row : s.rows) {
        EXPECT_EQ(row.x_over_n, 1.0);
        EXPECT_EQ(row.M_over_n, 1.0);
        EXPECT_EQ(row.r, row.n + 1);
        EXPECT_EQ(row.tau_count, 1u);
        EXPECT_EQ(row.last_tau, 0u);
    }
    ASSERT_TRUE(s.theory && s.x_delta && s.r_delta);
    EXPECT_EQ(s.theory->drift, 1.0);
    EXPECT_EQ(*s.x_delta, 0.0);
    EXPECT_EQ(*s.M_delta, 0.0);
    // r_n/n = 1 + 1/n over the window [2^15, 2^16]
    EXPECT_NEAR(*s.r_delta, 1.0 / 32768, 1e-15);
}

TEST(SpeedReport, WideLinearDriftHitsLowerRangeBand)
{
    LinearDriftWalk w(2, {2}, 100000);
    const auto s = speed_report(w, 100000, CheckpointSchedule::arithmetic(10000));
    EXPECT_EQ(s.violation_count, 0u);
    ASSERT_TRUE(s.theory);
    EXPECT_EQ(s.theory->range_lower, 1.0);
    EXPECT_EQ(s.theory->range_upper, 1.0);
    EXPECT_EQ(s.rows.back().x_over_n, 2.0);
    EXPECT_NEAR(s.rows.back().r_over_n, 1.0, 1e-4);
    EXPECT_EQ(*s.x_delta, 0.0);
}

TEST(SpeedReport, MixedPatternRangeBand)
{
    // mean 1/3 with m = 1: x_n/n → 1/3 and r_n/n → 1/3
    LinearDriftWalk w(1, {1, 1, -1}, 300000);
    const auto s = speed_report(w, 300000, CheckpointSchedule::dyadic());
    EXPECT_EQ(s.violation_count, 0u);
    EXPECT_NEAR(s.rows.back().x_over_n, 1.0 / 3, 1e-5);
    EXPECT_NEAR(s.rows.back().r_over_n, 1.0 / 3, 1e-5);
    EXPECT_LT(*s.x_delta, 1e-4);
    EXPECT_LT(*s.r_delta, 1e-4);
}

TEST(SpeedReport, SpiralHasFullRangeAndNoDrift)
{
    Spiral2DWalk w(100000);
    const auto s = speed_report(w, 100000, CheckpointSchedule::dyadic());
    EXPECT_EQ(s.violation_count, 0u);
    for (const auto& row : s.rows)
        EXPECT_EQ(row.r, row.n + 1);
    EXPECT_LT(s.rows.back().x_over_n, 0.02);
    EXPECT_LT(s.rows.back().M_over_n, 0.02);
    EXPECT_FALSE(s.theory.has_value());
    EXPECT_EQ(s.rows.back().tau_count, 1u); // only x_0 is the origin
}

TEST(SpeedReport, ZigzagReturnTimesAndNoViolations)
{
    ZigzagWalk z(Fraction(1, 2), 10000);
    const auto s = speed_report(z, 10000, CheckpointSchedule::arithmetic(1000));
    EXPECT_EQ(s.violation_count, 0u);
    EXPECT_EQ(s.rows.back().last_tau, 4374u);
    EXPECT_EQ(s.rows.back().tau_count, 9u);
}

TEST(SpeedReport, FlagsIncrementAndRangeViolations)
{
    auto w = rangewalk::testing::VectorWalk::line({0, 2, 4, 6}, 1);
    const auto s = speed_report(w, 3, CheckpointSchedule::arithmetic(1));
    EXPECT_GT(s.violation_count, 0u);
    ASSERT_EQ(s.rows.size(), 3u);
    const auto& v = s.rows.front().violations;
    EXPECT_NE(std::find(v.begin(), v.end(), "increment-bound"), v.end());
    EXPECT_NE(std::find(v.begin(), v.end(), "maximal-range"), v.end());
}

TEST(SpeedReport, StopsAtWalkEnd)
{
    SimpleRandomWalk w(0.5, 100, 1);
    const auto s = speed_report(w, 1000, CheckpointSchedule::dyadic());
    EXPECT_EQ(s.horizon, 100u);
    EXPECT_EQ(s.rows.back().n, 100u);
}
