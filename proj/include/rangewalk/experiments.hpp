#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rangewalk/config.hpp"
#include "rangewalk/trackers.hpp"

namespace rangewalk {

enum class Metric { range_speed, walk_speed, no_return, max_speed };

inline const char* to_string(Metric m)
{
    switch (m) {
    case Metric::range_speed: return "range_speed";
    case Metric::walk_speed: return "walk_speed";
    case Metric::no_return: return "no_return";
    case Metric::max_speed: return "max_speed";
    }
    return "";
}

inline Metric parse_metric(const std::string& s)
{
    for (Metric m : {Metric::range_speed, Metric::walk_speed, Metric::no_return, Metric::max_speed})
        if (s == to_string(m))
            return m;
    throw std::invalid_argument("unknown metric '" + s + "' (range_speed|walk_speed|no_return|max_speed)");
}

struct TrialSpec {
    GeneratorConfig generator;
    std::uint64_t horizon = 1000;
    std::vector<Metric> metrics{Metric::range_speed, Metric::walk_speed};
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;

    void validate() const
    {
        if (trials < 1)
            throw std::invalid_argument("trials must be at least 1");
        if (horizon < 1)
            throw std::invalid_argument("horizon must be at least 1");
        if (metrics.empty())
            throw std::invalid_argument("metric set must be non-empty");
        if (!generator.stochastic() && trials != 1)
            throw std::invalid_argument("deterministic generator '" + generator.name + "' runs with trials = 1");
    }
};

/// Raw end-of-run quantities of one trial. Integer where the walk is one-dimensional.
struct TrialOutcome {
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    std::uint64_t range = 0;
    /// Signed x_N in one dimension; ‖x_N‖ rounded down otherwise.
    coord_t x_final = 0;
    double x_norm = 0;
    double max_norm = 0;
    coord_t max_abs_1d = 0;
    bool one_d = true;
    bool returned = false;
    /// First n ≥ 1 with x_n = x_0, if any.
    std::optional<std::uint64_t> first_return;
};

/// Single pass over one walk: R_N, X_N, M_N and the first return to the start.
template <WalkSource W>
TrialOutcome run_pipeline(W& walk, std::uint64_t horizon, std::size_t set_cap = default_set_cap)
{
    const auto& meta = walk.metadata();
    TrialOutcome out;
    out.one_d = meta.d == 1;
    auto range = RangeTracker::for_walk(meta.d, meta.m, set_cap);
    ExtremaTracker ext;
    const LatticePoint start = walk.position();
    range.observe(start);
    ext.observe(start);
    if (out.one_d) {
        const coord_t x0 = start[0];
        while (walk.index() < horizon && walk.advance()) {
            const LatticePoint& x = walk.position();
            range.observe(x);
            ext.observe(x);
            if (!out.first_return && x[0] == x0)
                out.first_return = walk.index();
        }
        out.x_final = walk.position()[0];
        out.x_norm = std::fabs(static_cast<double>(out.x_final));
    } else {
        while (walk.index() < horizon && walk.advance()) {
            const LatticePoint& x = walk.position();
            range.observe(x);
            ext.observe(x);
            if (!out.first_return && x == start)
                out.first_return = walk.index();
        }
        out.x_norm = std::sqrt(static_cast<double>(squared_distance(LatticePoint(meta.d), walk.position())));
        out.x_final = static_cast<coord_t>(out.x_norm);
    }
    out.steps = walk.index();
    out.range = range.count();
    out.max_norm = ext.max_norm();
    out.max_abs_1d = ext.max_abs_1d();
    out.returned = out.first_return.has_value();
    return out;
}

/// Runs fn(i) for i in [0, count) on `workers` threads. Exceptions surface in index order.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned workers, Fn&& fn)
{
    if (workers <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    {
        std::vector<std::jthread> pool;
        const unsigned width = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
        for (unsigned w = 0; w < width; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

inline unsigned default_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Closed-form target shared by range_speed, walk_speed (and no_return for srw).
inline std::optional<double> theory_value(const GeneratorConfig& cfg)
{
    if (cfg.name == "srw" && cfg.p)
        return std::fabs(2.0 * *cfg.p - 1.0);
    if (cfg.name == "ergodic" && cfg.preset)
        return std::fabs(parse_chain_preset(*cfg.preset).stationary_mean());
    return std::nullopt;
}

inline bool metric_has_theory(const GeneratorConfig& cfg, Metric m)
{
    if (cfg.name == "srw")
        return m != Metric::max_speed;
    if (cfg.name == "ergodic")
        return m == Metric::range_speed || m == Metric::walk_speed;
    return false;
}

struct MetricSummary {
    double mean = 0;
    double stddev = 0;
    /// 1.96 · stddev / √trials
    double ci95 = 0;
    std::optional<double> theory{};
    std::optional<double> delta{};
};

struct AggregateReport {
    TrialSpec spec;
    std::map<Metric, MetricSummary> per_metric;
    std::vector<TrialOutcome> trials;

    /// Per-trial value of a metric, as aggregated.
    double value(const TrialOutcome& t, Metric m) const
    {
        const double n = static_cast<double>(t.steps);
        switch (m) {
        case Metric::range_speed: return static_cast<double>(t.range) / n;
        case Metric::walk_speed: return t.x_norm / n;
        case Metric::no_return: return t.returned ? 0.0 : 1.0;
        case Metric::max_speed: return t.max_norm / n;
        }
        return 0;
    }
};

namespace detail {

/// Mean and sample stddev of numerator_i / denom, summed exactly in integers.
inline std::pair<double, double> exact_moments(const std::vector<__int128>& num, long double denom)
{
    __int128 s = 0, s2 = 0;
    for (auto v : num) {
        s += v;
        s2 += v * v;
    }
    const auto t = static_cast<long double>(num.size());
    const long double mean = static_cast<long double>(s) / t / denom;
    if (num.size() < 2)
        return {static_cast<double>(mean), 0.0};
    const __int128 k = static_cast<__int128>(num.size());
    const __int128 scaled = k * s2 - s * s; // t² · biased variance of the numerators
    const long double var = static_cast<long double>(scaled) / (t * (t - 1)) / (denom * denom);
    return {static_cast<double>(mean), static_cast<double>(std::sqrt(std::max(0.0L, var)))};
}

inline std::pair<double, double> real_moments(const std::vector<double>& v)
{
    long double s = 0;
    for (double x : v)
        s += x;
    const long double t = static_cast<long double>(v.size());
    const long double mean = s / t;
    if (v.size() < 2)
        return {static_cast<double>(mean), 0.0};
    long double ss = 0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    return {static_cast<double>(mean), static_cast<double>(std::sqrt(ss / (t - 1)))};
}

} // namespace detail

/// Reduces outcomes in trial-index order into per-metric summaries.
inline void aggregate(AggregateReport& report)
{
    const auto& spec = report.spec;
    const auto theory = theory_value(spec.generator);
    const auto& trials = report.trials;
    bool same_steps = true;
    for (const auto& t : trials)
        same_steps = same_steps && t.steps == trials.front().steps;

    for (Metric m : spec.metrics) {
        std::pair<double, double> moments;
        const bool exact = same_steps && (trials.front().one_d || m == Metric::range_speed || m == Metric::no_return);
        if (exact) {
            std::vector<__int128> num;
            num.reserve(trials.size());
            for (const auto& t : trials) {
                switch (m) {
                case Metric::range_speed: num.push_back(t.range); break;
                case Metric::walk_speed: num.push_back(t.x_final < 0 ? -static_cast<__int128>(t.x_final) : t.x_final); break;
                case Metric::no_return: num.push_back(t.returned ? 0 : 1); break;
                case Metric::max_speed: num.push_back(t.max_abs_1d); break;
                }
            }
            const long double denom = m == Metric::no_return ? 1.0L : static_cast<long double>(trials.front().steps);
            moments = detail::exact_moments(num, denom);
        } else {
            std::vector<double> vals;
            vals.reserve(trials.size());
            for (const auto& t : trials)
                vals.push_back(report.value(t, m));
            moments = detail::real_moments(vals);
        }
        MetricSummary s;
        s.mean = moments.first;
        s.stddev = moments.second;
        s.ci95 = 1.96 * s.stddev / std::sqrt(static_cast<double>(trials.size()));
        if (theory && metric_has_theory(spec.generator, m)) {
            s.theory = *theory;
            s.delta = std::fabs(s.mean - *theory);
        }
        report.per_metric[m] = s;
    }
}

/// Monte Carlo over independent trials; trial i uses seed trial_seed(master_seed, i).
/// The result does not depend on `workers`.
inline AggregateReport run_trials(const TrialSpec& spec, unsigned workers = default_workers())
{
    spec.validate();
    GeneratorConfig cfg = spec.generator;
    cfg.steps = spec.horizon;
    // fail fast on a bad configuration before spinning up workers
    (void)make_walk(cfg, trial_seed(spec.master_seed, 0));

    AggregateReport report;
    report.spec = spec;
    report.spec.generator.steps = spec.horizon;
    report.trials.resize(spec.trials);
    parallel_for(spec.trials, workers, [&](std::uint64_t i) {
        const std::uint64_t seed = trial_seed(spec.master_seed, i);
        auto walk = make_walk(cfg, seed);
        TrialOutcome out = std::visit([&](auto& w) { return run_pipeline(w, spec.horizon); }, walk.variant());
        out.seed = seed;
        report.trials[i] = out;
    });
    aggregate(report);
    return report;
}

struct NoReturnEstimate {
    double frequency = 0;
    std::uint64_t horizon = 0;
    std::uint64_t trials = 0;
    std::string bias_note;
};

inline const char* no_return_bias_note()
{
    return "truncation bias: a walk that has not returned by the horizon may still return later, so this "
           "frequency over-estimates the never-return probability; the bias is non-increasing in the horizon";
}

/// Fraction of srw(p) trials with x_n ≠ 0 for every 1 ≤ n ≤ horizon.
inline NoReturnEstimate estimate_no_return(double p, std::uint64_t horizon, std::uint64_t trials,
                                           std::uint64_t master_seed, unsigned workers = default_workers())
{
    TrialSpec spec;
    spec.generator.name = "srw";
    spec.generator.p = p;
    spec.horizon = horizon;
    spec.trials = trials;
    spec.master_seed = master_seed;
    spec.metrics = {Metric::no_return};
    const auto report = run_trials(spec, workers);
    return {report.per_metric.at(Metric::no_return).mean, horizon, trials, no_return_bias_note()};
}

/// No-return indicators at nested horizons, each trial sharing one path across horizons.
struct NestedNoReturn {
    std::vector<std::uint64_t> horizons;
    /// indicators[trial][h] = 1 iff no return within horizons[h].
    std::vector<std::vector<std::uint8_t>> indicators;
    std::vector<double> frequencies;
};

inline NestedNoReturn no_return_nested(double p, std::vector<std::uint64_t> horizons, std::uint64_t trials,
                                       std::uint64_t master_seed, unsigned workers = default_workers())
{
    if (horizons.empty() || trials < 1)
        throw std::invalid_argument("nested no-return needs horizons and trials");
    std::sort(horizons.begin(), horizons.end());
    NestedNoReturn out;
    out.horizons = horizons;
    out.indicators.assign(trials, std::vector<std::uint8_t>(horizons.size(), 0));
    const std::uint64_t top = horizons.back();
    parallel_for(trials, workers, [&](std::uint64_t i) {
        SimpleRandomWalk walk(p, top, trial_seed(master_seed, i));
        const TrialOutcome o = run_pipeline(walk, top);
        for (std::size_t h = 0; h < horizons.size(); ++h)
            out.indicators[i][h] = (!o.first_return || *o.first_return > horizons[h]) ? 1 : 0;
    });
    out.frequencies.assign(horizons.size(), 0.0);
    for (std::size_t h = 0; h < horizons.size(); ++h) {
        std::uint64_t c = 0;
        for (const auto& row : out.indicators)
            c += row[h];
        out.frequencies[h] = static_cast<double>(c) / static_cast<double>(trials);
    }
    return out;
}

struct MetricVerdict {
    Metric metric{};
    double mean = 0;
    double theory = 0;
    double delta = 0;
    bool pass = false;
};

struct Verdict {
    double tol = 0;
    std::vector<MetricVerdict> metrics;
    /// |mean(range_speed) − mean(walk_speed)|, when both were measured.
    std::optional<double> cross_delta;
    std::optional<bool> cross_pass;

    bool pass() const
    {
        for (const auto& m : metrics)
            if (!m.pass)
                return false;
        return cross_pass.value_or(true);
    }
};

class NoTheoryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pass iff every metric with a target is within tol of it, and the range and walk speeds agree within tol.
inline Verdict compare(const AggregateReport& report, double tol)
{
    Verdict v;
    v.tol = tol;
    for (const auto& [m, s] : report.per_metric) {
        if (!s.theory)
            continue;
        const double delta = std::fabs(s.mean - *s.theory);
        v.metrics.push_back({m, s.mean, *s.theory, delta, delta <= tol});
    }
    if (v.metrics.empty())
        throw NoTheoryError("report has no theory target for generator '" + report.spec.generator.name + "'");
    const auto r = report.per_metric.find(Metric::range_speed);
    const auto w = report.per_metric.find(Metric::walk_speed);
    if (r != report.per_metric.end() && w != report.per_metric.end()) {
        v.cross_delta = std::fabs(r->second.mean - w->second.mean);
        v.cross_pass = *v.cross_delta <= tol;
    }
    return v;
}

} // namespace rangewalk
