#include <gtest/gtest.h>

#include "rangewalk/rangewalk.hpp"
#include "support.hpp"

using namespace rangewalk;
using rangewalk::testing::VectorWalk;

namespace {

// r_n by a sorted-unique brute force, M_n by direct max.
bool maximal_range_brute(const std::vector<LatticePoint>& pts, coord_t m)
{
    std::vector<std::vector<coord_t>> seen;
    coord_t best = 0;
    for (const auto& p : pts) {
        std::vector<coord_t> key(p.coords().begin(), p.coords().end());
        if (std::find(seen.begin(), seen.end(), key) == seen.end())
            seen.push_back(key);
        best = std::max(best, squared_distance(pts.front(), p));
        const coord_t slack = m * static_cast<coord_t>(seen.size() - 1);
        if (best > slack * slack)
            return false;
    }
    return true;
}

} // namespace

TEST(MaximalRange, TightAtEvenSteps)
{
    auto w = VectorWalk::line({0, 2, 4}, 2);
    EXPECT_TRUE(check_maximal_range(w, 2, 10).holds());
}

TEST(MaximalRange, SinglePointBaseCase)
{
    auto w = VectorWalk::line({7}, 3);
    const auto c = check_maximal_range(w, 3, 10);
    EXPECT_TRUE(c.holds());
    EXPECT_EQ(c.checked_through, 0u);
}

TEST(MaximalRange, DetectsUnderstatedBound)
{
    auto w = VectorWalk::line({0, 2, 4}, 1);
    const auto c = check_maximal_range(w, 1, 10);
    EXPECT_EQ(c.status, CheckResult::Status::violated);
    EXPECT_EQ(c.first_violation, 1u);
    auto v = VectorWalk::line({0, 1}, 1);
    EXPECT_EQ(check_maximal_range(v, 2, 10).status, CheckResult::Status::precondition_unmet);
}

TEST(MaximalRange, RandomBoundedPathsAgreeWithBruteForce)
{
    std::uint64_t idx = 0;
    for (coord_t m : {1, 2, 3, 5}) {
        for (std::size_t d : {1, 2}) {
            for (int i = 0; i < 150; ++i, ++idx) {
                BoundedRandomWalk w(m, d, 300, trial_seed(5, idx));
                BoundedRandomWalk replay(m, d, 300, trial_seed(5, idx));
                const auto pts = collect(replay, 300);
                ASSERT_TRUE(maximal_range_brute(pts, m));
                ASSERT_TRUE(check_maximal_range(w, m, 300).holds()) << "m=" << m << " d=" << d;
            }
        }
    }
}

TEST(Sandwich, Examples)
{
    auto a = VectorWalk::line({0, 1, 0, -1});
    EXPECT_TRUE(check_range_sandwich_1d(a, 10).holds());

    SimpleRandomWalk up(1.0, 500, 0);
    EXPECT_TRUE(check_range_sandwich_1d(up, 500).holds());

    // symmetric tent 0..M..0..−M reaches r = 2M + 1
    std::vector<coord_t> tent;
    const coord_t M = 6;
    for (coord_t x = 0; x <= M; ++x)
        tent.push_back(x);
    for (coord_t x = M - 1; x >= -M; --x)
        tent.push_back(x);
    auto t = VectorWalk::line(tent);
    EXPECT_TRUE(check_range_sandwich_1d(t, 100).holds());
    RangeTracker r(RangeTracker::Mode::interval, 1);
    for (coord_t x : tent)
        r.observe(LatticePoint{x});
    EXPECT_EQ(r.count(), static_cast<std::uint64_t>(2 * M + 1));
}

TEST(Sandwich, MonotoneLowerBoundIsTight)
{
    auto w = VectorWalk::line({0, 1, 2, 3, 4, 5});
    RangeTracker r(RangeTracker::Mode::interval, 1);
    ExtremaTracker e;
    do {
        r.observe(w.position());
        e.observe(w.position());
        EXPECT_EQ(r.count(), static_cast<std::uint64_t>(e.max_abs_1d()) + 1);
    } while (w.advance());
}

TEST(Sandwich, Preconditions)
{
    auto off = VectorWalk::line({3, 4});
    EXPECT_EQ(check_range_sandwich_1d(off, 10).status, CheckResult::Status::precondition_unmet);
    Spiral2DWalk s(10);
    EXPECT_EQ(check_range_sandwich_1d(s, 10).status, CheckResult::Status::precondition_unmet);
}

TEST(Sandwich, RandomUnitPathsNeverViolate)
{
    for (std::uint64_t i = 0; i < 2000; ++i) {
        BoundedRandomWalk w(1, 1, 1000, trial_seed(8, i));
        ASSERT_TRUE(check_range_sandwich_1d(w, 1000).holds()) << i;
    }
}

TEST(Sandwich, DetectsBrokenRangeClaim)
{
    SandwichCheck c;
    EXPECT_TRUE(c.observe(0, 1, 0));
    EXPECT_FALSE(c.observe(1, 4, 1)); // r > 2M + 1
    EXPECT_EQ(c.first_violation(), 1u);
}

TEST(Excursion, ZigzagHalfIsTightAtPeaks)
{
    ZigzagWalk z(Fraction(1, 2), 10000);
    const auto c = check_excursion_bound(z, 10000);
    EXPECT_TRUE(c.holds());
    EXPECT_EQ(c.excursions, 8u); // zeros at 2, 6, 18, …, 4374
    EXPECT_EQ(c.tight_excursions, c.excursions);
    EXPECT_EQ(c.checked_through, 4374u);
}

TEST(Excursion, SquaresTentStaysBelowHalfGap)
{
    TauTentWalk t(TauRule::squares(), 10000);
    const auto c = check_excursion_bound(t, 10000);
    EXPECT_TRUE(c.holds());
    EXPECT_EQ(c.excursions, 100u);
    EXPECT_EQ(c.tight_excursions, 0u); // odd gaps: peak k−1 < (2k−1)/2
}

TEST(Excursion, SimpleWalkHolds)
{
    SimpleRandomWalk w(0.5, 10000, 42);
    const auto c = check_excursion_bound(w, 10000);
    EXPECT_TRUE(c.holds()) << c.detail;
    EXPECT_GT(c.excursions, 0u);
}

TEST(Excursion, DetectsViolationsAndUnmetClass)
{
    // excursion [0, 4) reaching height 3 breaks 2|x| ≤ gap
    ExcursionCheck raw;
    for (auto [n, x] : std::vector<std::pair<std::uint64_t, coord_t>>{{0, 0}, {1, 1}, {2, 3}, {3, 1}, {4, 0}})
        raw.observe(n, x);
    EXPECT_EQ(raw.first_violation(), 2u);

    ExcursionCheck ok;
    for (auto [n, x] : std::vector<std::pair<std::uint64_t, coord_t>>{{0, 0}, {1, 1}, {2, 0}, {3, 1}, {4, 0}})
        ok.observe(n, x);
    EXPECT_FALSE(ok.first_violation().has_value());
    EXPECT_EQ(ok.closed_excursions(), 2u);
    EXPECT_EQ(ok.tight_excursions(), 2u);

    SimpleRandomWalk up(1.0, 100, 0);
    const auto c = check_excursion_bound(up, 100);
    EXPECT_EQ(c.status, CheckResult::Status::precondition_unmet);
    EXPECT_FALSE(c.detail.empty());

    auto start = VectorWalk::line({1, 0, 1});
    EXPECT_EQ(check_excursion_bound(start, 10).status, CheckResult::Status::precondition_unmet);
    auto wide = VectorWalk::line({0, 2, 0}, 2);
    EXPECT_EQ(check_excursion_bound(wide, 10).status, CheckResult::Status::precondition_unmet);
}

TEST(Excursion, OnlyClosedExcursionsAreJudged)
{
    // the open tail after the last zero is not checked
    auto w = VectorWalk::line({0, 1, 0, 1, 2, 3, 4});
    const auto c = check_excursion_bound(w, 10);
    EXPECT_TRUE(c.holds());
    EXPECT_EQ(c.checked_through, 2u);
    EXPECT_EQ(c.excursions, 1u);
}
