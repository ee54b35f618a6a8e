#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rangewalk/trackers.hpp"

namespace rangewalk {

struct CheckResult {
    enum class Status { holds, violated, precondition_unmet };

    Status status = Status::holds;
    std::optional<std::uint64_t> first_violation;
    /// Last n covered by the check.
    std::uint64_t checked_through = 0;
    std::string detail;

    bool holds() const noexcept { return status == Status::holds; }
};

inline const char* to_string(CheckResult::Status s)
{
    switch (s) {
    case CheckResult::Status::holds: return "holds";
    case CheckResult::Status::violated: return "violated";
    case CheckResult::Status::precondition_unmet: return "precondition-unmet";
    }
    return "";
}

/// M_n/m + 1 ≤ r_n, tested as M_n² ≤ m²(r_n − 1)² so the comparison is exact in every dimension.
class MaximalRangeCheck {
public:
    explicit MaximalRangeCheck(coord_t m) : m_(m) {}

    bool observe(std::uint64_t n, std::uint64_t r, coord_t max_sq)
    {
        const auto slack = static_cast<__int128>(m_) * static_cast<__int128>(r - 1);
        const bool ok = static_cast<__int128>(max_sq) <= slack * slack;
        if (!ok && !first_)
            first_ = n;
        return ok;
    }

    const std::optional<std::uint64_t>& first_violation() const noexcept { return first_; }

private:
    coord_t m_;
    std::optional<std::uint64_t> first_;
};

/// M_n + 1 ≤ r_n ≤ 2M_n + 1 for one-dimensional unit-step paths from 0.
class SandwichCheck {
public:
    bool observe(std::uint64_t n, std::uint64_t r, coord_t max_abs)
    {
        const auto mm = static_cast<std::uint64_t>(max_abs);
        const bool ok = mm + 1 <= r && r <= 2 * mm + 1;
        if (!ok && !first_)
            first_ = n;
        return ok;
    }

    const std::optional<std::uint64_t>& first_violation() const noexcept { return first_; }

private:
    std::optional<std::uint64_t> first_;
};

/// Per-excursion bounds for sequences that keep returning to 0:
///   |x_n| ≤ (τ_k − τ_{k−1})/2                    for τ_{k−1} ≤ n < τ_k
///   |x_n|/n ≤ (τ_k/τ_{k−1} − 1)/2                for the same n, when τ_{k−1} ≥ 1.
/// An excursion is judged when it closes; only running-record points can be the
/// first violation, so those are all that is buffered.
class ExcursionCheck {
public:
    /// Returns the first violating n inside the excursion closed at n, if any.
    std::optional<std::uint64_t> observe(std::uint64_t n, coord_t x)
    {
        if (!started_) {
            started_ = true;
            prev_tau_ = n;
            return std::nullopt;
        }
        if (x != 0) {
            const coord_t a = checked_abs(x);
            if (heights_.empty() || a > heights_.back().second)
                heights_.emplace_back(n, a);
            if (ratios_.empty() ||
                static_cast<__int128>(a) * ratios_.back().first > static_cast<__int128>(ratios_.back().second) * n)
                ratios_.emplace_back(n, a);
            return std::nullopt;
        }
        const std::uint64_t gap = n - prev_tau_;
        std::optional<std::uint64_t> bad;
        for (const auto& [t, h] : heights_) {
            if (2 * static_cast<std::uint64_t>(h) > gap) {
                bad = t;
                break;
            }
        }
        if (prev_tau_ >= 1) {
            for (const auto& [t, h] : ratios_) {
                // 2|x_t|·τ_{k−1} > t·(τ_k − τ_{k−1})
                if (static_cast<unsigned __int128>(2 * static_cast<std::uint64_t>(h)) * prev_tau_ >
                    static_cast<unsigned __int128>(t) * gap) {
                    if (!bad || t < *bad)
                        bad = t;
                    break;
                }
            }
        }
        const coord_t peak = heights_.empty() ? 0 : heights_.back().second;
        if (2 * static_cast<std::uint64_t>(peak) == gap)
            ++tight_;
        ++closed_;
        last_tau_ = n;
        prev_tau_ = n;
        heights_.clear();
        ratios_.clear();
        if (bad && !first_)
            first_ = bad;
        return bad;
    }

    const std::optional<std::uint64_t>& first_violation() const noexcept { return first_; }
    std::uint64_t closed_excursions() const noexcept { return closed_; }
    std::uint64_t tight_excursions() const noexcept { return tight_; }
    std::uint64_t last_tau() const noexcept { return last_tau_; }

private:
    bool started_ = false;
    std::uint64_t prev_tau_ = 0;
    std::uint64_t last_tau_ = 0;
    std::uint64_t closed_ = 0;
    std::uint64_t tight_ = 0;
    std::vector<std::pair<std::uint64_t, coord_t>> heights_;
    std::vector<std::pair<std::uint64_t, coord_t>> ratios_;
    std::optional<std::uint64_t> first_;
};

namespace detail {

inline CheckResult finish(const std::optional<std::uint64_t>& first, std::uint64_t through)
{
    CheckResult res;
    res.checked_through = through;
    if (first) {
        res.status = CheckResult::Status::violated;
        res.first_violation = first;
    }
    return res;
}

inline CheckResult unmet(std::string why, std::uint64_t through = 0)
{
    CheckResult res;
    res.status = CheckResult::Status::precondition_unmet;
    res.detail = std::move(why);
    res.checked_through = through;
    return res;
}

} // namespace detail

/// Maximal range inequality at every n ≤ horizon, any dimension.
template <WalkSource W>
CheckResult check_maximal_range(W& walk, coord_t m, std::uint64_t horizon)
{
    if (m < 1)
        throw std::invalid_argument("increment bound m must be positive");
    if (m != walk.metadata().m)
        return detail::unmet("declared m=" + std::to_string(m) + " differs from the walk's m=" +
                             std::to_string(walk.metadata().m));
    auto range = RangeTracker::for_walk(walk.metadata().d, m);
    ExtremaTracker ext;
    MaximalRangeCheck check(m);
    range.observe(walk.position());
    ext.observe(walk.position());
    check.observe(walk.index(), range.count(), ext.max_squared());
    while (walk.index() < horizon && walk.advance()) {
        range.observe(walk.position());
        ext.observe(walk.position());
        check.observe(walk.index(), range.count(), ext.max_squared());
    }
    return detail::finish(check.first_violation(), walk.index());
}

/// M_n + 1 ≤ r_n ≤ 2M_n + 1 at every n ≤ horizon.
template <WalkSource W>
CheckResult check_range_sandwich_1d(W& walk, std::uint64_t horizon)
{
    if (walk.metadata().d != 1 || walk.metadata().m != 1)
        return detail::unmet("sandwich check needs d = 1 and m = 1");
    if (walk.position()[0] != 0)
        return detail::unmet("sandwich check needs x_0 = 0");
    RangeTracker range(RangeTracker::Mode::interval, 1);
    ExtremaTracker ext;
    SandwichCheck check;
    range.observe(walk.position());
    ext.observe(walk.position());
    check.observe(walk.index(), range.count(), ext.max_abs_1d());
    while (walk.index() < horizon && walk.advance()) {
        range.observe(walk.position());
        ext.observe(walk.position());
        check.observe(walk.index(), range.count(), ext.max_abs_1d());
    }
    return detail::finish(check.first_violation(), walk.index());
}

struct ExcursionResult : CheckResult {
    std::uint64_t excursions = 0;
    std::uint64_t tight_excursions = 0;
};

/// Excursion bounds over every completed excursion within the horizon.
/// checked_through is the last zero visit; the open tail after it cannot be judged.
template <WalkSource W>
ExcursionResult check_excursion_bound(W& walk, std::uint64_t horizon)
{
    ExcursionResult res;
    if (walk.metadata().d != 1 || walk.metadata().m != 1) {
        static_cast<CheckResult&>(res) = detail::unmet("excursion check needs d = 1 and m = 1");
        return res;
    }
    if (walk.position()[0] != 0) {
        static_cast<CheckResult&>(res) = detail::unmet("excursion check needs x_0 = 0");
        return res;
    }
    ExcursionCheck check;
    check.observe(walk.index(), walk.position()[0]);
    while (walk.index() < horizon && walk.advance())
        check.observe(walk.index(), walk.position()[0]);
    if (check.closed_excursions() == 0) {
        static_cast<CheckResult&>(res) = detail::unmet("no return to 0 within horizon " + std::to_string(walk.index()));
        return res;
    }
    static_cast<CheckResult&>(res) = detail::finish(check.first_violation(), check.last_tau());
    res.excursions = check.closed_excursions();
    res.tight_excursions = check.tight_excursions();
    res.detail = "horizon " + std::to_string(walk.index()) + ", last zero at " + std::to_string(check.last_tau());
    return res;
}

} // namespace rangewalk
