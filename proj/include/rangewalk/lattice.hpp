#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rangewalk {

using coord_t = std::int64_t;

/// Raised when a coordinate or derived integer quantity leaves the int64 range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline coord_t checked_add(coord_t a, coord_t b)
{
    coord_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("lattice coordinate overflow");
    return r;
}

inline coord_t checked_sub(coord_t a, coord_t b)
{
    coord_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("lattice coordinate overflow");
    return r;
}

inline coord_t checked_mul(coord_t a, coord_t b)
{
    coord_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("lattice coordinate overflow");
    return r;
}

inline coord_t checked_abs(coord_t a)
{
    if (a == std::numeric_limits<coord_t>::min())
        throw OverflowError("lattice coordinate overflow");
    return a < 0 ? -a : a;
}

/// A point of Z^d. The dimension is fixed at construction.
class LatticePoint {
public:
    LatticePoint() : coords_(1, 0) {}

    explicit LatticePoint(std::size_t dim) : coords_(dim, 0)
    {
        if (dim == 0)
            throw DimensionError("lattice dimension must be at least 1");
    }

    LatticePoint(std::initializer_list<coord_t> coords) : coords_(coords)
    {
        if (coords_.empty())
            throw DimensionError("lattice dimension must be at least 1");
    }

    explicit LatticePoint(std::vector<coord_t> coords) : coords_(std::move(coords))
    {
        if (coords_.empty())
            throw DimensionError("lattice dimension must be at least 1");
    }

    std::size_t dim() const noexcept { return coords_.size(); }

    coord_t operator[](std::size_t i) const { return coords_[i]; }
    coord_t& operator[](std::size_t i) { return coords_[i]; }

    std::span<const coord_t> coords() const noexcept { return coords_; }

    bool is_origin() const noexcept
    {
        for (coord_t c : coords_)
            if (c != 0)
                return false;
        return true;
    }

    /// In-place checked translation.
    void translate(const LatticePoint& delta)
    {
        require_same_dim(delta);
        for (std::size_t i = 0; i < coords_.size(); ++i)
            coords_[i] = checked_add(coords_[i], delta.coords_[i]);
    }

    void require_same_dim(const LatticePoint& other) const
    {
        if (other.dim() != dim())
            throw DimensionError("dimension mismatch: " + std::to_string(dim()) + " vs " +
                                 std::to_string(other.dim()));
    }

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;

private:
    std::vector<coord_t> coords_;
};

struct LatticePointHash {
    std::size_t operator()(const LatticePoint& p) const noexcept
    {
        // boost::hash_combine style mixing over the packed coordinates
        std::size_t h = p.dim();
        for (coord_t c : p.coords())
            h ^= std::hash<coord_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

/// Exact squared Euclidean distance ‖b − a‖², overflow-checked.
inline coord_t squared_distance(const LatticePoint& a, const LatticePoint& b)
{
    a.require_same_dim(b);
    coord_t sum = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        coord_t d = checked_sub(b[i], a[i]);
        sum = checked_add(sum, checked_mul(d, d));
    }
    return sum;
}

/// Euclidean norm of b − a. In one dimension this is |b − a| exactly.
inline double step_norm(const LatticePoint& a, const LatticePoint& b)
{
    a.require_same_dim(b);
    if (a.dim() == 1)
        return static_cast<double>(checked_abs(checked_sub(b[0], a[0])));
    long double sum = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        long double d = static_cast<long double>(b[i]) - static_cast<long double>(a[i]);
        sum += d * d;
    }
    return static_cast<double>(std::sqrt(sum));
}

/// Confirmation (nullopt) or the smallest k with ‖x_{k+1} − x_k‖ > m.
inline std::optional<std::size_t> validate_increment_bound(std::span<const LatticePoint> path,
                                                           coord_t m)
{
    if (path.empty())
        throw std::invalid_argument("increment check needs a non-empty path");
    if (m < 1)
        throw std::invalid_argument("increment bound m must be positive");
    for (const auto& p : path)
        path.front().require_same_dim(p);
    const coord_t m2 = checked_mul(m, m);
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
        if (squared_distance(path[k], path[k + 1]) > m2)
            return k;
    return std::nullopt;
}

inline std::string to_string(const LatticePoint& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(p[i]);
    }
    return s + ")";
}

} // namespace rangewalk
