#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rangewalk/markov.hpp"
#include "rangewalk/random.hpp"
#include "rangewalk/walk.hpp"
#include "rangewalk/zigzag.hpp"

namespace rangewalk {

namespace detail {

inline std::string format_double(double v)
{
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline void require_probability(double p, const char* what)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " + format_double(p));
}

} // namespace detail

/// Steps +1 with probability p and −1 otherwise.
class SimpleRandomWalk : public BasicWalk<SimpleRandomWalk> {
public:
    SimpleRandomWalk(double p, std::uint64_t steps, std::uint64_t seed)
        : BasicWalk(make_meta(p, seed), steps), p_(p), rng_(seed)
    {
    }

    void step(LatticePoint& x, std::uint64_t)
    {
        x[0] = checked_add(x[0], uniform01(rng_) < p_ ? 1 : -1);
    }

private:
    static WalkMetadata make_meta(double p, std::uint64_t seed)
    {
        detail::require_probability(p, "p");
        WalkMetadata m;
        m.generator_name = "srw";
        m.params["p"] = detail::format_double(p);
        m.seed = seed;
        m.theoretical_drift = 2.0 * p - 1.0;
        return m;
    }

    double p_;
    Engine rng_;
};

/// Partial sums of a stationary Markov chain of increments.
class ErgodicWalk : public BasicWalk<ErgodicWalk> {
public:
    ErgodicWalk(MarkovIncrementChain chain, std::uint64_t steps, std::uint64_t seed,
                std::string label = "custom")
        : BasicWalk(make_meta(chain, seed, label), steps), chain_(std::move(chain)), rng_(seed)
    {
        const std::vector<double> start =
            chain_.initial.empty() ? stationary_distribution(chain_.transition) : chain_.initial;
        initial_cdf_ = cumulative(start);
        for (const auto& row : chain_.transition)
            row_cdf_.push_back(cumulative(row));
    }

    const MarkovIncrementChain& chain() const noexcept { return chain_; }

    void step(LatticePoint& x, std::uint64_t k)
    {
        const auto& cdf = k == 1 ? initial_cdf_ : row_cdf_[state_];
        state_ = sample(cdf, uniform01(rng_));
        x[0] = checked_add(x[0], chain_.increments[state_]);
    }

private:
    static WalkMetadata make_meta(const MarkovIncrementChain& chain, std::uint64_t seed, const std::string& label)
    {
        chain.validate();
        WalkMetadata m;
        m.generator_name = "ergodic";
        m.params["preset"] = label;
        m.seed = seed;
        m.theoretical_drift = chain.stationary_mean();
        return m;
    }

    static std::vector<double> cumulative(const std::vector<double>& probs)
    {
        std::vector<double> c(probs.size());
        std::partial_sum(probs.begin(), probs.end(), c.begin());
        return c;
    }

    static std::size_t sample(const std::vector<double>& cdf, double u)
    {
        for (std::size_t i = 0; i + 1 < cdf.size(); ++i)
            if (u < cdf[i])
                return i;
        // rounding in the running sum must not select a zero-probability tail state
        std::size_t last = cdf.size() - 1;
        while (last > 0 && cdf[last] == cdf[last - 1])
            --last;
        return last;
    }

    MarkovIncrementChain chain_;
    Engine rng_;
    std::vector<double> initial_cdf_;
    std::vector<std::vector<double>> row_cdf_;
    std::size_t state_ = 0;
};

/// Birth-death chain on Z started at 0.
struct BirthDeathPreset {
    enum class Kind { symmetric, lazy, reflected };
    Kind kind = Kind::symmetric;
    /// Holding probability for the lazy preset.
    double alpha = 0;

    static BirthDeathPreset symmetric() { return {Kind::symmetric, 0}; }
    static BirthDeathPreset reflected() { return {Kind::reflected, 0}; }
    static BirthDeathPreset lazy(double alpha)
    {
        if (!(alpha >= 0.0 && alpha < 1.0))
            throw std::invalid_argument("lazy alpha must lie in [0,1), got " + detail::format_double(alpha));
        return {Kind::lazy, alpha};
    }

    /// "symmetric", "reflected" or "lazy:<alpha>"
    static BirthDeathPreset parse(const std::string& text)
    {
        if (text == "symmetric")
            return symmetric();
        if (text == "reflected")
            return reflected();
        if (text.rfind("lazy:", 0) == 0) {
            const std::string arg = text.substr(5);
            double alpha = -1;
            auto r = std::from_chars(arg.data(), arg.data() + arg.size(), alpha);
            if (r.ec != std::errc{} || r.ptr != arg.data() + arg.size())
                throw std::invalid_argument("bad lazy preset '" + text + "'");
            return lazy(alpha);
        }
        throw std::invalid_argument("unknown birth-death preset '" + text + "' (symmetric|lazy:<a>|reflected)");
    }

    std::string to_string() const
    {
        switch (kind) {
        case Kind::symmetric: return "symmetric";
        case Kind::reflected: return "reflected";
        case Kind::lazy: return "lazy:" + detail::format_double(alpha);
        }
        return {};
    }
};

class BirthDeathWalk : public BasicWalk<BirthDeathWalk> {
public:
    BirthDeathWalk(const BirthDeathPreset& preset, std::uint64_t steps, std::uint64_t seed)
        : BasicWalk(make_meta(preset, seed), steps), preset_(preset), rng_(seed)
    {
    }

    void step(LatticePoint& x, std::uint64_t)
    {
        int inc;
        switch (preset_.kind) {
        case BirthDeathPreset::Kind::reflected:
            inc = x[0] == 0 ? 1 : (uniform01(rng_) < 0.5 ? 1 : -1);
            break;
        case BirthDeathPreset::Kind::lazy: {
            const double u = uniform01(rng_);
            inc = u < preset_.alpha ? 0 : (u < preset_.alpha + (1.0 - preset_.alpha) / 2 ? 1 : -1);
            break;
        }
        default:
            inc = uniform01(rng_) < 0.5 ? 1 : -1;
        }
        x[0] = checked_add(x[0], inc);
    }

private:
    static WalkMetadata make_meta(const BirthDeathPreset& preset, std::uint64_t seed)
    {
        WalkMetadata m;
        m.generator_name = "birth-death";
        m.params["preset"] = preset.to_string();
        m.seed = seed;
        return m;
    }

    BirthDeathPreset preset_;
    Engine rng_;
};

/// Square spiral on Z²: runs of length 1,1,2,2,3,3,… turning right, up, left, down.
class Spiral2DWalk : public BasicWalk<Spiral2DWalk> {
public:
    explicit Spiral2DWalk(std::uint64_t steps) : BasicWalk(make_meta(), steps) {}

    void step(LatticePoint& x, std::uint64_t)
    {
        static constexpr std::array<std::array<coord_t, 2>, 4> dirs{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
        x[0] = checked_add(x[0], dirs[dir_][0]);
        x[1] = checked_add(x[1], dirs[dir_][1]);
        if (++done_ == run_) {
            done_ = 0;
            dir_ = (dir_ + 1) % 4;
            if (dir_ % 2 == 0)
                ++run_;
        }
    }

private:
    static WalkMetadata make_meta()
    {
        WalkMetadata m;
        m.generator_name = "spiral2d";
        m.d = 2;
        return m;
    }

    std::uint64_t run_ = 1;
    std::uint64_t done_ = 0;
    std::size_t dir_ = 0;
};

/// Repeats a fixed step pattern; drift is the pattern mean.
class LinearDriftWalk : public BasicWalk<LinearDriftWalk> {
public:
    LinearDriftWalk(coord_t m, std::vector<coord_t> pattern, std::uint64_t steps)
        : BasicWalk(make_meta(m, pattern), steps), pattern_(std::move(pattern))
    {
    }

    void step(LatticePoint& x, std::uint64_t k)
    {
        x[0] = checked_add(x[0], pattern_[(k - 1) % pattern_.size()]);
    }

private:
    static WalkMetadata make_meta(coord_t m, const std::vector<coord_t>& pattern)
    {
        if (m < 1)
            throw std::invalid_argument("m must be positive");
        if (pattern.empty())
            throw std::invalid_argument("drift pattern must be non-empty");
        long double sum = 0;
        std::string text;
        for (coord_t s : pattern) {
            if (checked_abs(s) > m)
                throw std::invalid_argument("pattern step " + std::to_string(s) + " exceeds m=" + std::to_string(m));
            sum += s;
            if (!text.empty())
                text += ',';
            text += std::to_string(s);
        }
        WalkMetadata meta;
        meta.generator_name = "linear-drift";
        meta.params["pattern"] = text;
        meta.m = m;
        meta.theoretical_drift = static_cast<double>(sum / pattern.size());
        return meta;
    }

    std::vector<coord_t> pattern_;
};

/// I.i.d. increments uniform over the integer ball {v ∈ Z^d : ‖v‖₂ ≤ m}.
/// Test fixture for the bounded-increment inequalities.
class BoundedRandomWalk : public BasicWalk<BoundedRandomWalk> {
public:
    BoundedRandomWalk(coord_t m, std::size_t d, std::uint64_t steps, std::uint64_t seed)
        : BasicWalk(make_meta(m, d, seed), steps), dist_(-m, m), rng_(seed), delta_(d)
    {
    }

    void step(LatticePoint& x, std::uint64_t)
    {
        const coord_t m2 = meta_.m * meta_.m;
        coord_t norm2;
        do {
            norm2 = 0;
            for (std::size_t i = 0; i < delta_.dim(); ++i) {
                delta_[i] = dist_(rng_);
                norm2 += delta_[i] * delta_[i];
            }
        } while (norm2 > m2);
        x.translate(delta_);
    }

private:
    static WalkMetadata make_meta(coord_t m, std::size_t d, std::uint64_t seed)
    {
        if (m < 1 || m > 3'000'000'000LL)
            throw std::invalid_argument("m out of range");
        if (d < 1)
            throw std::invalid_argument("dimension must be at least 1");
        WalkMetadata meta;
        meta.generator_name = "bounded-random";
        meta.params["m"] = std::to_string(m);
        meta.params["d"] = std::to_string(d);
        meta.m = m;
        meta.d = d;
        meta.seed = seed;
        if (d == 1)
            meta.theoretical_drift = 0.0;
        return meta;
    }

    std::uniform_int_distribution<coord_t> dist_;
    Engine rng_;
    LatticePoint delta_;
};

} // namespace rangewalk
