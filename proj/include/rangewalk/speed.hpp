#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rangewalk/checks.hpp"
#include "rangewalk/trackers.hpp"

namespace rangewalk {

/// Min and max of a checkpointed series over the window [N/2, N], N the last checkpoint.
/// An estimate of liminf/limsup at finite horizon, never the limit itself.
struct TailEstimate {
    double liminf_hat = 0;
    double limsup_hat = 0;
    std::uint64_t window_lo = 0;
    std::uint64_t window_hi = 0;
};

inline TailEstimate tail_limit_estimate(const std::vector<std::pair<std::uint64_t, double>>& series)
{
    if (series.size() < 4)
        throw InsufficientDataError("tail estimate needs at least 4 checkpoints");
    const std::uint64_t last = series.back().first;
    TailEstimate est;
    est.window_lo = last / 2;
    est.window_hi = last;
    bool any = false;
    for (const auto& [n, v] : series) {
        if (n < est.window_lo || n > last)
            continue;
        if (!any) {
            est.liminf_hat = est.limsup_hat = v;
            any = true;
        } else {
            est.liminf_hat = std::min(est.liminf_hat, v);
            est.limsup_hat = std::max(est.limsup_hat, v);
        }
    }
    return est;
}

struct SpeedRow {
    std::uint64_t n = 0;
    /// x_n / n for d = 1 (signed), ‖x_n‖ / n otherwise.
    double x_over_n = 0;
    double M_over_n = 0;
    double r_over_n = 0;
    std::uint64_t r = 0;
    std::uint64_t tau_count = 0;
    std::optional<std::uint64_t> last_tau;
    std::vector<std::string> violations;
};

struct SpeedTheory {
    double drift = 0;
    /// Band for lim r_n/n: [|ℓ|/m, min(1, |ℓ|)].
    double range_lower = 0;
    double range_upper = 0;
};

struct SpeedSeries {
    WalkMetadata metadata;
    std::uint64_t horizon = 0;
    std::vector<SpeedRow> rows;
    std::optional<TailEstimate> x_tail, M_tail, r_tail;
    std::optional<SpeedTheory> theory;
    /// Tail-window distance from theory: x vs ℓ (|ℓ| when d > 1), M vs |ℓ|, r vs the band.
    std::optional<double> x_delta, M_delta, r_delta;
    std::uint64_t violation_count = 0;

    std::vector<std::pair<std::uint64_t, double>> series(double SpeedRow::*field) const
    {
        std::vector<std::pair<std::uint64_t, double>> out;
        out.reserve(rows.size());
        for (const auto& row : rows)
            out.emplace_back(row.n, row.*field);
        return out;
    }
};

namespace detail {

inline double tail_distance(const TailEstimate& t, double lo, double hi)
{
    return std::max({0.0, lo - t.liminf_hat, t.limsup_hat - hi});
}

} // namespace detail

/// One pass computing x_n/n, M_n/n, r_n/n, zero visits and every applicable inequality.
template <WalkSource W>
SpeedSeries speed_report(W& walk, std::uint64_t horizon, const CheckpointSchedule& schedule,
                         std::size_t set_cap = default_set_cap)
{
    if (horizon < 1)
        throw std::invalid_argument("horizon must be at least 1");
    const WalkMetadata& meta = walk.metadata();
    const coord_t m = meta.m;
    const bool one_d = meta.d == 1;
    const bool unit_1d = one_d && m == 1 && walk.position()[0] == 0;

    SpeedSeries out;
    out.metadata = meta;

    auto range = RangeTracker::for_walk(meta.d, m, set_cap);
    ExtremaTracker ext;
    ReturnTimeTracker zeros(false);
    MaximalRangeCheck maximal(m);
    SandwichCheck sandwich;
    ExcursionCheck excursion;
    const coord_t m2 = checked_mul(m, m);
    LatticePoint prev = walk.position();
    std::vector<std::string> pending;
    auto flag = [&](const char* what) {
        if (std::find(pending.begin(), pending.end(), what) == pending.end())
            pending.emplace_back(what);
        ++out.violation_count;
    };

    auto observe = [&] {
        const std::uint64_t n = walk.index();
        const LatticePoint& x = walk.position();
        if (n > 0 && squared_distance(prev, x) > m2)
            flag("increment-bound");
        range.observe(x);
        ext.observe(x);
        zeros.observe(n, x);
        if (!maximal.observe(n, range.count(), ext.max_squared()))
            flag("maximal-range");
        if (unit_1d) {
            if (!sandwich.observe(n, range.count(), ext.max_abs_1d()))
                flag("sandwich");
            if (excursion.observe(n, x[0]))
                flag("excursion");
        }
        prev = x;
    };
    auto emit = [&] {
        const std::uint64_t n = walk.index();
        const LatticePoint& x = walk.position();
        SpeedRow row;
        row.n = n;
        const double nn = static_cast<double>(n);
        row.x_over_n = one_d ? static_cast<double>(x[0]) / nn : std::sqrt(static_cast<double>(squared_distance(LatticePoint(x.dim()), x))) / nn;
        row.M_over_n = ext.max_norm() / nn;
        row.r = range.count();
        row.r_over_n = static_cast<double>(row.r) / nn;
        row.tau_count = zeros.count();
        row.last_tau = zeros.last();
        row.violations = std::move(pending);
        pending.clear();
        out.rows.push_back(std::move(row));
    };

    observe();
    while (walk.index() < horizon && walk.advance()) {
        observe();
        if (schedule.contains(walk.index(), horizon))
            emit();
    }
    if (walk.index() > 0 && (out.rows.empty() || out.rows.back().n != walk.index()))
        emit();
    out.horizon = walk.index();

    if (out.rows.size() >= 4) {
        out.x_tail = tail_limit_estimate(out.series(&SpeedRow::x_over_n));
        out.M_tail = tail_limit_estimate(out.series(&SpeedRow::M_over_n));
        out.r_tail = tail_limit_estimate(out.series(&SpeedRow::r_over_n));
    }
    if (meta.theoretical_drift) {
        const double ell = *meta.theoretical_drift;
        const double a = std::fabs(ell);
        out.theory = SpeedTheory{ell, a / static_cast<double>(m), std::min(1.0, a)};
        if (out.x_tail) {
            const double target = one_d ? ell : a;
            out.x_delta = detail::tail_distance(*out.x_tail, target, target);
            out.M_delta = detail::tail_distance(*out.M_tail, a, a);
            out.r_delta = detail::tail_distance(*out.r_tail, out.theory->range_lower, out.theory->range_upper);
        }
    }
    return out;
}

} // namespace rangewalk
