#pragma once

#include <cstdint>
#include <vector>

#include "rangewalk/walk.hpp"

namespace rangewalk::testing {

/// Replays a fixed list of points as a walk.
class VectorWalk {
public:
    VectorWalk(std::vector<LatticePoint> points, coord_t m = 1) : pts_(std::move(points))
    {
        meta_.generator_name = "vector";
        meta_.m = m;
        meta_.d = pts_.front().dim();
    }

    static VectorWalk line(const std::vector<coord_t>& xs, coord_t m = 1)
    {
        std::vector<LatticePoint> pts;
        for (coord_t x : xs)
            pts.push_back(LatticePoint{x});
        return VectorWalk(std::move(pts), m);
    }

    const WalkMetadata& metadata() const noexcept { return meta_; }
    const LatticePoint& position() const noexcept { return pts_[i_]; }
    std::uint64_t index() const noexcept { return i_; }
    bool advance()
    {
        if (i_ + 1 >= pts_.size())
            return false;
        ++i_;
        return true;
    }

private:
    std::vector<LatticePoint> pts_;
    WalkMetadata meta_;
    std::uint64_t i_ = 0;
};

static_assert(WalkSource<VectorWalk>);

} // namespace rangewalk::testing
