#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rangewalk/rangewalk.hpp"

using namespace rangewalk;

namespace {

TrialSpec srw_spec(double p, std::uint64_t horizon, std::uint64_t trials, std::uint64_t seed)
{
    TrialSpec spec;
    spec.generator.name = "srw";
    spec.generator.p = p;
    spec.horizon = horizon;
    spec.trials = trials;
    spec.master_seed = seed;
    spec.metrics = {Metric::range_speed, Metric::walk_speed, Metric::no_return, Metric::max_speed};
    return spec;
}

struct ExactMoments {
    double range = 0, walk = 0, no_return = 0, max = 0;
};

// Enumerates all 2^N sign sequences with their probabilities.
ExactMoments enumerate(double p, int N)
{
    ExactMoments e;
    for (std::uint32_t bits = 0; bits < (1u << N); ++bits) {
        double prob = 1;
        long x = 0, lo = 0, hi = 0, mx = 0;
        bool returned = false;
        for (int k = 0; k < N; ++k) {
            const bool up = (bits >> k) & 1u;
            prob *= up ? p : 1 - p;
            x += up ? 1 : -1;
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            mx = std::max(mx, std::labs(x));
            returned = returned || x == 0;
        }
        e.range += prob * static_cast<double>(hi - lo + 1) / N;
        e.walk += prob * static_cast<double>(std::labs(x)) / N;
        e.no_return += prob * (returned ? 0.0 : 1.0);
        e.max += prob * static_cast<double>(mx) / N;
    }
    return e;
}

} // namespace

TEST(Pipeline, CountsRangeAndFirstReturn)
{
    ZigzagWalk z(Fraction(1, 2), 100);
    const auto o = run_pipeline(z, 20);
    EXPECT_EQ(o.steps, 20u);
    EXPECT_EQ(o.range, 7u); // 0..6, peak at t_2 = 12
    EXPECT_EQ(o.first_return, 2u);
    EXPECT_EQ(o.x_final, 2);
    EXPECT_EQ(o.max_abs_1d, 6);
}

TEST(Trials, DegenerateWalksAreExact)
{
    auto spec = srw_spec(1.0, 1000, 20, 3);
    const auto r = run_trials(spec, 1);
    EXPECT_EQ(r.per_metric.at(Metric::range_speed).mean, 1.001);
    EXPECT_EQ(r.per_metric.at(Metric::walk_speed).mean, 1.0);
    EXPECT_EQ(r.per_metric.at(Metric::walk_speed).stddev, 0.0);
    EXPECT_EQ(r.per_metric.at(Metric::no_return).mean, 1.0);
    EXPECT_EQ(r.per_metric.at(Metric::walk_speed).theory, 1.0);

    spec.generator.p = 0.0;
    const auto down = run_trials(spec, 1);
    EXPECT_EQ(down.per_metric.at(Metric::walk_speed).mean, 1.0);
    EXPECT_EQ(down.trials.front().x_final, -1000);
}

TEST(Trials, WorkerCountDoesNotChangeReport)
{
    const auto spec = srw_spec(0.6, 2000, 64, 11);
    const auto serial = to_json(run_trials(spec, 1), true).dump();
    const auto parallel = to_json(run_trials(spec, 4), true).dump();
    EXPECT_EQ(serial, parallel);
}

TEST(Trials, SeedsFollowTheMixingRule)
{
    const auto r = run_trials(srw_spec(0.5, 10, 5, 77), 1);
    for (std::size_t i = 0; i < r.trials.size(); ++i)
        EXPECT_EQ(r.trials[i].seed, trial_seed(77, i));
    SimpleRandomWalk replay(0.5, 10, trial_seed(77, 3));
    EXPECT_EQ(collect_1d(replay, 10).back(), r.trials[3].x_final);
}

TEST(Trials, ExhaustiveEnumerationOracle)
{
    constexpr int N = 10;
    constexpr std::uint64_t T = 20000;
    for (double p : {0.3, 0.5, 0.7}) {
        const auto exact = enumerate(p, N);
        const auto r = run_trials(srw_spec(p, N, T, 1234), 1);
        const auto check = [&](Metric m, double want) {
            const auto& s = r.per_metric.at(m);
            const double se = std::max(s.stddev / std::sqrt(static_cast<double>(T)), 1e-12);
            EXPECT_LE(std::fabs(s.mean - want), 3 * se) << to_string(m) << " p=" << p;
        };
        check(Metric::range_speed, exact.range);
        check(Metric::walk_speed, exact.walk);
        check(Metric::no_return, exact.no_return);
        check(Metric::max_speed, exact.max);
    }
}

TEST(Trials, MeanMatchesDumpedTrials)
{
    const auto r = run_trials(srw_spec(0.55, 500, 40, 5), 1);
    const auto j = to_json(r, true);
    for (const char* key : {"range_speed", "walk_speed", "no_return", "max_speed"}) {
        double sum = 0;
        for (const auto& t : j["trials"])
            sum += t[key].get<double>();
        EXPECT_NEAR(sum / 40, j["per_metric"][key]["mean"].get<double>(), 1e-12) << key;
    }
    std::ostringstream csv;
    write_trials_csv(r, csv);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "trial,metric,value");
    std::size_t rows = 0;
    while (std::getline(in, line))
        ++rows;
    EXPECT_EQ(rows, 40u * 4);
}

TEST(Trials, TwoDimensionalMetricsUseNorms)
{
    TrialSpec spec;
    spec.generator.name = "spiral2d";
    spec.horizon = 1000;
    spec.metrics = {Metric::range_speed, Metric::walk_speed};
    const auto r = run_trials(spec, 1);
    EXPECT_EQ(r.per_metric.at(Metric::range_speed).mean, 1.001);
    EXPECT_LT(r.per_metric.at(Metric::walk_speed).mean, 0.02);
    EXPECT_FALSE(r.per_metric.at(Metric::range_speed).theory);
    spec.trials = 2;
    EXPECT_THROW(run_trials(spec, 1), std::invalid_argument);
}

TEST(Trials, SpecValidation)
{
    auto spec = srw_spec(0.5, 10, 1, 0);
    spec.trials = 0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec = srw_spec(0.5, 0, 1, 0);
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec = srw_spec(0.5, 10, 1, 0);
    spec.metrics.clear();
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    EXPECT_EQ(parse_metric("no_return"), Metric::no_return);
    EXPECT_THROW(parse_metric("speed"), std::invalid_argument);
}

TEST(NoReturn, NestedHorizonsAreMonotone)
{
    const auto nr = no_return_nested(0.7, {10, 100, 1000}, 2000, 9, 2);
    for (const auto& row : nr.indicators)
        for (std::size_t h = 1; h < row.size(); ++h)
            ASSERT_LE(row[h], row[h - 1]);
    EXPECT_GE(nr.frequencies[0], nr.frequencies[1]);
    EXPECT_GE(nr.frequencies[1], nr.frequencies[2]);
    EXPECT_NEAR(nr.frequencies[2], 0.4, 0.04);

    const auto est = estimate_no_return(0.7, 1000, 2000, 9, 2);
    EXPECT_EQ(est.frequency, nr.frequencies[2]);
    EXPECT_FALSE(est.bias_note.empty());
}

TEST(Theory, Values)
{
    GeneratorConfig srw{.name = "srw", .p = 0.3};
    EXPECT_NEAR(*theory_value(srw), 0.4, 1e-15);
    GeneratorConfig erg{.name = "ergodic", .preset = "two-state:0.1,0.3"};
    EXPECT_NEAR(*theory_value(erg), 0.5, 1e-12);
    GeneratorConfig iid{.name = "ergodic", .preset = "iid:0.5,0.2,0.3"};
    EXPECT_NEAR(*theory_value(iid), 0.2, 1e-12);
    GeneratorConfig bd{.name = "birth-death"};
    EXPECT_FALSE(theory_value(bd));
    EXPECT_FALSE(metric_has_theory(srw, Metric::max_speed));
    EXPECT_TRUE(metric_has_theory(srw, Metric::no_return));
    EXPECT_FALSE(metric_has_theory(erg, Metric::no_return));
}

TEST(Compare, FlagsMismatch)
{
    AggregateReport r;
    r.spec = srw_spec(0.7, 10, 1, 0);
    r.spec.metrics = {Metric::range_speed};
    r.per_metric[Metric::range_speed] = MetricSummary{.mean = 0.3, .theory = 0.4, .delta = 0.1};
    const auto v = compare(r, 0.02);
    ASSERT_EQ(v.metrics.size(), 1u);
    EXPECT_FALSE(v.pass());
    EXPECT_NEAR(v.metrics[0].delta, 0.1, 1e-12);
    EXPECT_FALSE(v.cross_delta);

    EXPECT_TRUE(compare(r, 0.15).pass());
}

TEST(Compare, CrossCheckCatchesDisagreement)
{
    AggregateReport r;
    r.spec = srw_spec(0.7, 10, 1, 0);
    r.per_metric[Metric::range_speed] = MetricSummary{.mean = 0.41, .theory = 0.4, .delta = 0.01};
    r.per_metric[Metric::walk_speed] = MetricSummary{.mean = 0.39, .theory = 0.4, .delta = 0.01};
    const auto v = compare(r, 0.015);
    EXPECT_TRUE(v.metrics[0].pass && v.metrics[1].pass);
    EXPECT_NEAR(*v.cross_delta, 0.02, 1e-12);
    EXPECT_FALSE(v.pass());
}

TEST(Compare, NoTheoryThrows)
{
    AggregateReport r;
    r.spec.generator.name = "spiral2d";
    r.per_metric[Metric::range_speed] = MetricSummary{.mean = 1.0};
    EXPECT_THROW(compare(r, 0.02), NoTheoryError);
}

TEST(Parallel, PropagatesExceptions)
{
    EXPECT_THROW(parallel_for(10, 3,
                              [](std::uint64_t i) {
                                  if (i == 7)
                                      throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}
