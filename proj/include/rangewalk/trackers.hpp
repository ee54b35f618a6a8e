#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rangewalk/lattice.hpp"
#include "rangewalk/walk.hpp"

namespace rangewalk {

class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_set_cap = std::size_t{1} << 30;

/// Online r_n = card{x_0, …, x_n}.
///
/// Interval mode keeps only min and max and is exact for one-dimensional unit-step
/// paths, where the visited set is always the whole interval. Set mode stores every
/// visited point and works for any dimension and bound.
class RangeTracker {
public:
    enum class Mode { interval, set };

    RangeTracker(Mode mode, std::size_t dim, std::size_t set_cap = default_set_cap)
        : mode_(mode), dim_(dim), cap_(set_cap)
    {
        if (dim == 0)
            throw DimensionError("lattice dimension must be at least 1");
        if (mode == Mode::interval && dim != 1)
            throw std::invalid_argument("interval range mode needs d = 1");
    }

    /// Interval mode iff d = 1 and m = 1.
    static RangeTracker for_walk(std::size_t dim, coord_t m, std::size_t set_cap = default_set_cap)
    {
        return RangeTracker(dim == 1 && m == 1 ? Mode::interval : Mode::set, dim, set_cap);
    }

    Mode mode() const noexcept { return mode_; }

    void observe(const LatticePoint& x)
    {
        if (x.dim() != dim_)
            throw DimensionError("dimension mismatch in range tracker");
        if (mode_ == Mode::interval) {
            const coord_t v = x[0];
            if (count_ == 0) {
                lo_ = hi_ = v;
            } else if (v < lo_ - 1 || v > hi_ + 1) {
                // a jump: the visited set stops being an interval
                promote_to_set();
            } else {
                lo_ = std::min(lo_, v);
                hi_ = std::max(hi_, v);
            }
            if (mode_ == Mode::interval) {
                count_ = static_cast<std::uint64_t>(hi_ - lo_) + 1;
                return;
            }
        }
        if (seen_.size() >= cap_ && !seen_.contains(x))
            throw ResourceCapError("range set exceeded its cap of " + std::to_string(cap_) + " points");
        seen_.insert(x);
        count_ = seen_.size();
    }

    std::uint64_t count() const noexcept { return count_; }

    /// Switches an interval tracker to set mode, materializing [min, max].
    void promote_to_set()
    {
        if (mode_ == Mode::set)
            return;
        mode_ = Mode::set;
        if (count_ == 0)
            return;
        if (count_ > cap_)
            throw ResourceCapError("range set exceeded its cap of " + std::to_string(cap_) + " points");
        seen_.reserve(count_);
        for (coord_t v = lo_;; ++v) {
            seen_.insert(LatticePoint{v});
            if (v == hi_)
                break;
        }
    }

    coord_t min() const noexcept { return lo_; }
    coord_t max() const noexcept { return hi_; }

private:
    Mode mode_;
    std::size_t dim_;
    std::size_t cap_;
    std::uint64_t count_ = 0;
    coord_t lo_ = 0;
    coord_t hi_ = 0;
    std::unordered_set<LatticePoint, LatticePointHash> seen_;
};

/// Running M_n = max_{k≤n} ‖x_k − x_0‖, kept exactly as a squared integer.
class ExtremaTracker {
public:
    void observe(const LatticePoint& x)
    {
        if (!origin_) {
            origin_ = x;
            return;
        }
        if (x.dim() == 1) {
            const coord_t d = checked_abs(checked_sub(x[0], (*origin_)[0]));
            if (d > max_abs_1d_) {
                max_abs_1d_ = d;
                max_sq_ = checked_mul(d, d);
            }
            return;
        }
        const coord_t d2 = squared_distance(*origin_, x);
        if (d2 > max_sq_)
            max_sq_ = d2;
    }

    coord_t max_squared() const noexcept { return max_sq_; }
    double max_norm() const
    {
        if (origin_ && origin_->dim() == 1)
            return static_cast<double>(max_abs_1d_);
        return std::sqrt(static_cast<double>(max_sq_));
    }
    /// Exact M_n for one-dimensional paths.
    coord_t max_abs_1d() const noexcept { return max_abs_1d_; }
    const std::optional<LatticePoint>& origin() const noexcept { return origin_; }

private:
    std::optional<LatticePoint> origin_;
    coord_t max_sq_ = 0;
    coord_t max_abs_1d_ = 0;
};

/// Indices n with x_n = 0, ascending.
struct ReturnTimes {
    std::vector<std::uint64_t> times;
};

class ReturnTimeTracker {
public:
    void observe(std::uint64_t n, const LatticePoint& x)
    {
        if (x.is_origin()) {
            ++count_;
            last_ = n;
            if (keep_)
                rt_.times.push_back(n);
        }
    }

    explicit ReturnTimeTracker(bool keep_times = true) : keep_(keep_times) {}

    std::uint64_t count() const noexcept { return count_; }
    std::optional<std::uint64_t> last() const noexcept { return last_; }
    const ReturnTimes& times() const noexcept { return rt_; }
    ReturnTimes take() { return std::move(rt_); }

private:
    bool keep_;
    std::uint64_t count_ = 0;
    std::optional<std::uint64_t> last_;
    ReturnTimes rt_;
};

/// Which n are reported: dyadic {1,2,4,…} or arithmetic {k,2k,…}, always with the horizon.
struct CheckpointSchedule {
    enum class Kind { dyadic, arithmetic };
    Kind kind = Kind::dyadic;
    std::uint64_t stride = 0;

    static CheckpointSchedule dyadic() { return {Kind::dyadic, 0}; }
    static CheckpointSchedule arithmetic(std::uint64_t k)
    {
        if (k == 0)
            throw std::invalid_argument("arithmetic checkpoint stride must be positive");
        return {Kind::arithmetic, k};
    }

    /// "dyadic" or "arith:<k>"
    static CheckpointSchedule parse(const std::string& text)
    {
        if (text == "dyadic")
            return dyadic();
        if (text.rfind("arith:", 0) == 0) {
            const std::string arg = text.substr(6);
            std::uint64_t k = 0;
            auto r = std::from_chars(arg.data(), arg.data() + arg.size(), k);
            if (r.ec != std::errc{} || r.ptr != arg.data() + arg.size())
                throw std::invalid_argument("bad checkpoint schedule '" + text + "'");
            return arithmetic(k);
        }
        throw std::invalid_argument("unknown checkpoint schedule '" + text + "' (dyadic|arith:<k>)");
    }

    bool contains(std::uint64_t n, std::uint64_t horizon) const noexcept
    {
        if (n == 0)
            return false;
        if (n == horizon)
            return true;
        if (kind == Kind::dyadic)
            return (n & (n - 1)) == 0;
        return n % stride == 0;
    }

    std::vector<std::uint64_t> points(std::uint64_t horizon) const
    {
        std::vector<std::uint64_t> out;
        if (kind == Kind::dyadic) {
            for (std::uint64_t n = 1; n < horizon; n *= 2)
                out.push_back(n);
        } else {
            for (std::uint64_t n = stride; n < horizon; n += stride)
                out.push_back(n);
        }
        if (horizon > 0)
            out.push_back(horizon);
        return out;
    }
};

/// r_n at each checkpoint.
template <WalkSource W>
std::vector<std::pair<std::uint64_t, std::uint64_t>> track_range(W& walk, std::uint64_t horizon,
                                                                 const CheckpointSchedule& schedule,
                                                                 std::size_t set_cap = default_set_cap)
{
    if (horizon < 1)
        throw std::invalid_argument("horizon must be at least 1");
    auto range = RangeTracker::for_walk(walk.metadata().d, walk.metadata().m, set_cap);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    range.observe(walk.position());
    while (walk.index() < horizon && walk.advance()) {
        range.observe(walk.position());
        if (schedule.contains(walk.index(), horizon))
            out.emplace_back(walk.index(), range.count());
    }
    if (walk.index() < horizon && (out.empty() || out.back().first != walk.index()))
        out.emplace_back(walk.index(), range.count());
    return out;
}

/// M_n at each checkpoint.
template <WalkSource W>
std::vector<std::pair<std::uint64_t, double>> track_extrema(W& walk, std::uint64_t horizon,
                                                            const CheckpointSchedule& schedule)
{
    if (horizon < 1)
        throw std::invalid_argument("horizon must be at least 1");
    ExtremaTracker ext;
    std::vector<std::pair<std::uint64_t, double>> out;
    ext.observe(walk.position());
    while (walk.index() < horizon && walk.advance()) {
        ext.observe(walk.position());
        if (schedule.contains(walk.index(), horizon))
            out.emplace_back(walk.index(), ext.max_norm());
    }
    if (walk.index() < horizon && (out.empty() || out.back().first != walk.index()))
        out.emplace_back(walk.index(), ext.max_norm());
    return out;
}

/// All n ≤ horizon with x_n = 0 for a one-dimensional walk.
template <WalkSource W>
ReturnTimes return_times(W& walk, std::uint64_t horizon)
{
    if (walk.metadata().d != 1)
        throw DimensionError("return times are defined for one-dimensional walks");
    ReturnTimeTracker rt;
    rt.observe(walk.index(), walk.position());
    while (walk.index() < horizon && walk.advance())
        rt.observe(walk.index(), walk.position());
    return rt.take();
}

class InsufficientDataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// τ_k / τ_{k−1} over consecutive return times, skipping a zero denominator.
inline std::vector<double> ratio_series(const ReturnTimes& rt)
{
    std::vector<std::uint64_t> positive;
    for (auto t : rt.times)
        if (t > 0)
            positive.push_back(t);
    if (positive.size() < 2)
        throw InsufficientDataError("ratio series needs at least two positive return times");
    std::vector<double> out;
    out.reserve(positive.size() - 1);
    for (std::size_t k = 1; k < positive.size(); ++k)
        out.push_back(static_cast<double>(positive[k]) / static_cast<double>(positive[k - 1]));
    return out;
}

} // namespace rangewalk
