#include <gtest/gtest.h>

#include <set>

#include "rangewalk/rangewalk.hpp"
#include "support.hpp"

using namespace rangewalk;
using rangewalk::testing::VectorWalk;

namespace {

std::uint64_t range_at_end(VectorWalk w)
{
    const auto rows = track_range(w, 1000, CheckpointSchedule::dyadic());
    return rows.back().second;
}

} // namespace

TEST(TrackRange, SmallPaths)
{
    EXPECT_EQ(range_at_end(VectorWalk::line({0, 1, 0, -1})), 3u);
    EXPECT_EQ(range_at_end(VectorWalk::line({0, 1, 2, 1, 0, -1})), 4u);
    EXPECT_EQ(range_at_end(VectorWalk::line({0, 2, 4}, 2)), 3u);
}

TEST(TrackRange, SpiralCountsEveryPoint)
{
    Spiral2DWalk s(10000);
    const auto rows = track_range(s, 10000, CheckpointSchedule::dyadic());
    for (const auto& [n, r] : rows)
        EXPECT_EQ(r, n + 1);
    EXPECT_EQ(rows.back().first, 10000u);
}

TEST(TrackRange, CheckpointSchedules)
{
    EXPECT_EQ(CheckpointSchedule::dyadic().points(20), (std::vector<std::uint64_t>{1, 2, 4, 8, 16, 20}));
    EXPECT_EQ(CheckpointSchedule::arithmetic(5).points(12), (std::vector<std::uint64_t>{5, 10, 12}));
    EXPECT_EQ(CheckpointSchedule::parse("arith:3").stride, 3u);
    EXPECT_THROW(CheckpointSchedule::parse("arith:0"), std::invalid_argument);
    EXPECT_THROW(CheckpointSchedule::parse("log"), std::invalid_argument);
    SimpleRandomWalk w(1.0, 20, 0);
    const auto rows = track_range(w, 20, CheckpointSchedule::dyadic());
    std::vector<std::uint64_t> ns;
    for (const auto& row : rows)
        ns.push_back(row.first);
    EXPECT_EQ(ns, CheckpointSchedule::dyadic().points(20));
}

TEST(RangeTracker, IntervalEqualsSetOnRandomUnitPaths)
{
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        BoundedRandomWalk w(1, 1, 1000, trial_seed(99, seed));
        RangeTracker interval(RangeTracker::Mode::interval, 1);
        RangeTracker set(RangeTracker::Mode::set, 1);
        std::uint64_t prev = 0;
        do {
            interval.observe(w.position());
            set.observe(w.position());
            ASSERT_EQ(interval.count(), set.count()) << "seed " << seed << " n " << w.index();
            ASSERT_EQ(interval.mode(), RangeTracker::Mode::interval);
            const std::uint64_t r = set.count();
            if (w.index() == 0)
                ASSERT_EQ(r, 1u);
            else
                ASSERT_TRUE(r == prev || r == prev + 1);
            prev = r;
        } while (w.advance());
    }
}

TEST(RangeTracker, UnitStepsIn2DGrowByAtMostOne)
{
    BoundedRandomWalk w(1, 2, 5000, 3);
    auto range = RangeTracker::for_walk(2, 1);
    EXPECT_EQ(range.mode(), RangeTracker::Mode::set);
    std::uint64_t prev = 0;
    do {
        range.observe(w.position());
        ASSERT_LE(range.count(), prev + 1);
        ASSERT_GE(range.count(), prev);
        prev = range.count();
    } while (w.advance());
}

TEST(RangeTracker, IntervalPromotesOnJump)
{
    RangeTracker r(RangeTracker::Mode::interval, 1);
    for (coord_t x : {0, 1, 2, 1, 5, 4, 0})
        r.observe(LatticePoint{x});
    EXPECT_EQ(r.mode(), RangeTracker::Mode::set);
    EXPECT_EQ(r.count(), 5u); // {0,1,2,4,5}
}

TEST(RangeTracker, SetCapIsEnforced)
{
    Spiral2DWalk s(100);
    EXPECT_THROW(track_range(s, 100, CheckpointSchedule::dyadic(), 50), ResourceCapError);
    EXPECT_THROW(RangeTracker(RangeTracker::Mode::interval, 2), std::invalid_argument);
}

TEST(TrackExtrema, Examples)
{
    auto w = VectorWalk::line({0, 1, 0, -1});
    EXPECT_EQ(track_extrema(w, 10, CheckpointSchedule::dyadic()).back().second, 1.0);
    auto c = VectorWalk::line({0, 0, 0});
    EXPECT_EQ(track_extrema(c, 10, CheckpointSchedule::dyadic()).back().second, 0.0);
    ZigzagWalk z(Fraction(1, 2), 100);
    const auto rows = track_extrema(z, 4, CheckpointSchedule::dyadic());
    EXPECT_EQ(rows.back().first, 4u);
    EXPECT_EQ(rows.back().second, 2.0);
    auto planar = VectorWalk({{1, 1}, {4, 5}, {1, 2}});
    EXPECT_EQ(track_extrema(planar, 10, CheckpointSchedule::dyadic()).back().second, 5.0);
}

TEST(ReturnTimes, Examples)
{
    ZigzagWalk z(Fraction(1, 2), 100);
    EXPECT_EQ(return_times(z, 20).times, (std::vector<std::uint64_t>{0, 2, 6, 18}));
    SimpleRandomWalk up(1.0, 100, 0);
    EXPECT_EQ(return_times(up, 100).times, (std::vector<std::uint64_t>{0}));
    TauTentWalk sq(TauRule::squares(), 100);
    EXPECT_EQ(return_times(sq, 16).times, (std::vector<std::uint64_t>{0, 1, 4, 9, 16}));
    Spiral2DWalk s(10);
    EXPECT_THROW(return_times(s, 10), DimensionError);
}

TEST(RatioSeries, Examples)
{
    ZigzagWalk z(Fraction(1, 2), 100000);
    for (double r : ratio_series(return_times(z, 100000)))
        EXPECT_EQ(r, 3.0);

    TauTentWalk sq(TauRule::squares(), 10000);
    const auto ratios = ratio_series(return_times(sq, 10000));
    // k²/(k−1)² for k = 2, 3, …
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const double k = static_cast<double>(i + 2);
        EXPECT_NEAR(ratios[i], k * k / ((k - 1) * (k - 1)), 1e-12 * ratios[i]);
    }
    EXPECT_LT(ratios.back(), 1.03);

    EXPECT_THROW(ratio_series(ReturnTimes{{0, 5}}), InsufficientDataError);
    EXPECT_THROW(ratio_series(ReturnTimes{{}}), InsufficientDataError);
}
