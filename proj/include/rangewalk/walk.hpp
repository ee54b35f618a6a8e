#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "rangewalk/lattice.hpp"

namespace rangewalk {

/// Provenance and contract of a walk: who produced it and which increment bound it promises.
struct WalkMetadata {
    std::string generator_name;
    std::map<std::string, std::string> params;
    std::optional<std::uint64_t> seed;
    coord_t m = 1;
    std::size_t d = 1;
    /// Closed-form lim x_n / n, when the generator has one.
    std::optional<double> theoretical_drift;
};

/// A single-consumer producer of x_0, x_1, ... . position() is x_index(); advance()
/// moves to the next point and returns false once the stream is exhausted.
template <class W>
concept WalkSource = requires(W& w, const W& cw) {
    { cw.metadata() } -> std::convertible_to<const WalkMetadata&>;
    { cw.position() } -> std::convertible_to<const LatticePoint&>;
    { cw.index() } -> std::same_as<std::uint64_t>;
    { w.advance() } -> std::same_as<bool>;
};

/// Shared bookkeeping for generated walks. Derived classes implement
/// `void step(LatticePoint& x, std::uint64_t next_index)`.
template <class Derived>
class BasicWalk {
public:
    const WalkMetadata& metadata() const noexcept { return meta_; }
    const LatticePoint& position() const noexcept { return pos_; }
    std::uint64_t index() const noexcept { return index_; }
    std::uint64_t steps() const noexcept { return steps_; }

    /// Provenance entries added after construction (e.g. the originating config record).
    void annotate(const std::string& key, std::string value) { meta_.params[key] = std::move(value); }

    bool advance()
    {
        if (index_ >= steps_)
            return false;
        static_cast<Derived*>(this)->step(pos_, index_ + 1);
        ++index_;
        return true;
    }

protected:
    BasicWalk(WalkMetadata meta, std::uint64_t steps)
        : meta_(std::move(meta)), pos_(meta_.d), steps_(steps)
    {
    }

    WalkMetadata meta_;
    LatticePoint pos_;
    std::uint64_t index_ = 0;
    std::uint64_t steps_;
};

/// Drains up to `horizon` steps of a walk into a vector, x_0 included.
template <WalkSource W>
std::vector<LatticePoint> collect(W& walk, std::uint64_t horizon)
{
    std::vector<LatticePoint> out;
    out.push_back(walk.position());
    while (walk.index() < horizon && walk.advance())
        out.push_back(walk.position());
    return out;
}

/// One-dimensional convenience: the first coordinate of each collected point.
template <WalkSource W>
std::vector<coord_t> collect_1d(W& walk, std::uint64_t horizon)
{
    std::vector<coord_t> out;
    out.push_back(walk.position()[0]);
    while (walk.index() < horizon && walk.advance())
        out.push_back(walk.position()[0]);
    return out;
}

} // namespace rangewalk
