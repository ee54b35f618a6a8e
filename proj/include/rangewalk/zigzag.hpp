#pragma once

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rangewalk/fraction.hpp"
#include "rangewalk/walk.hpp"

namespace rangewalk {

namespace detail {

using big_int = boost::multiprecision::cpp_int;

inline void require_unit_interval(const Fraction& ell)
{
    if (!(ell.num > 0 && ell.num < ell.den))
        throw std::invalid_argument("ell must lie strictly between 0 and 1, got " + ell.to_string());
}

/// q = (1+ℓ)/(1−ℓ) = (den+num)/(den−num)
inline std::pair<big_int, big_int> growth_ratio(const Fraction& ell)
{
    return {big_int(ell.den) + ell.num, big_int(ell.den) - ell.num};
}

inline std::optional<std::int64_t> to_int64(const big_int& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        return std::nullopt;
    return static_cast<std::int64_t>(v);
}

} // namespace detail

/// Smallest n₀ ≥ 0 with ((1+ℓ)/(1−ℓ))^n₀ · 2ℓ/(1−ℓ) > 1, evaluated exactly.
inline std::int64_t compute_n0(const Fraction& ell)
{
    detail::require_unit_interval(ell);
    const auto [a, b] = detail::growth_ratio(ell);
    // (a/b)^n · 2num/(den−num) > 1  ⇔  a^n · 2num > b^n · (den−num)
    detail::big_int lhs = detail::big_int(2) * ell.num;
    detail::big_int rhs = detail::big_int(ell.den) - ell.num;
    std::int64_t n0 = 0;
    while (!(lhs > rhs)) {
        lhs *= a;
        rhs *= b;
        ++n0;
    }
    return n0;
}

inline std::int64_t compute_n0(double ell)
{
    return compute_n0(Fraction::approximate(ell));
}

/// 2⌊q^(n+n₀)⌋ with q = (1+ℓ)/(1−ℓ), exactly. nullopt when it does not fit in 64 bits.
inline std::optional<std::int64_t> zigzag_tau_general(const Fraction& ell, std::int64_t n0, std::int64_t n)
{
    detail::require_unit_interval(ell);
    if (n < 0)
        return 0; // τ_{−1}
    const auto [a, b] = detail::growth_ratio(ell);
    const auto e = static_cast<unsigned>(n + n0);
    const detail::big_int floor_pow = boost::multiprecision::pow(a, e) / boost::multiprecision::pow(b, e);
    return detail::to_int64(2 * floor_pow);
}

/// τ_n: the closed form 2·3ⁿ for ℓ = 1/2, the general floor formula otherwise.
inline std::optional<std::int64_t> zigzag_tau(const Fraction& ell, std::int64_t n0, std::int64_t n)
{
    detail::require_unit_interval(ell);
    if (n < 0)
        return 0;
    if (ell == Fraction(1, 2))
        return detail::to_int64(detail::big_int(2) * boost::multiprecision::pow(detail::big_int(3), static_cast<unsigned>(n)));
    return zigzag_tau_general(ell, n0, n);
}

/// Return times τ_n and peak times t_n of the recurrent tent sequence with limsup x_n/n ≥ ℓ.
struct ZigzagPlan {
    Fraction ell;
    std::int64_t n0 = 0;
    std::vector<std::int64_t> tau;
    std::vector<std::int64_t> t;

    std::int64_t tau_before(std::size_t n) const { return n == 0 ? 0 : tau[n - 1]; }

    /// Throws std::logic_error if the schedule is degenerate.
    void validate() const
    {
        for (std::size_t n = 0; n < tau.size(); ++n) {
            const std::int64_t prev = tau_before(n);
            if (tau[n] <= prev)
                throw std::logic_error("zigzag plan: tau not strictly increasing at n=" + std::to_string(n));
            if (tau[n] % 2 != 0)
                throw std::logic_error("zigzag plan: odd tau at n=" + std::to_string(n));
            if (!(prev < t[n] && t[n] < tau[n]))
                throw std::logic_error("zigzag plan: peak time outside its excursion at n=" + std::to_string(n));
        }
    }

    /// First `terms` entries, or fewer if τ would leave the int64 range.
    static ZigzagPlan with_terms(const Fraction& ell, std::size_t terms)
    {
        return build(ell, terms, std::numeric_limits<std::int64_t>::max(), false);
    }

    /// Enough entries that the last τ is at or beyond `horizon`.
    static ZigzagPlan covering(const Fraction& ell, std::uint64_t horizon)
    {
        return build(ell, std::numeric_limits<std::size_t>::max(),
                     static_cast<std::int64_t>(std::min<std::uint64_t>(horizon, std::numeric_limits<std::int64_t>::max())),
                     true);
    }

private:
    static ZigzagPlan build(const Fraction& ell, std::size_t max_terms, std::int64_t cover, bool must_cover)
    {
        ZigzagPlan plan;
        plan.ell = ell;
        plan.n0 = ell == Fraction(1, 2) ? 0 : compute_n0(ell);
        for (std::int64_t n = 0; static_cast<std::size_t>(n) < max_terms; ++n) {
            if (!plan.tau.empty() && plan.tau.back() >= cover)
                break;
            const auto tau_n = zigzag_tau(ell, plan.n0, n);
            if (!tau_n) {
                if (must_cover)
                    throw OverflowError("zigzag schedule leaves the int64 range before the horizon");
                break;
            }
            const std::int64_t prev = plan.tau.empty() ? 0 : plan.tau.back();
            plan.tau.push_back(*tau_n);
            plan.t.push_back(prev / 2 + *tau_n / 2); // both even
            if (*tau_n <= prev)
                break;
        }
        plan.validate();
        return plan;
    }
};

/// Deterministic tent: +1 on [τ_{n−1}, t_n), −1 on [t_n, τ_n).
class ZigzagWalk : public BasicWalk<ZigzagWalk> {
public:
    ZigzagWalk(const Fraction& ell, std::uint64_t steps)
        : BasicWalk(make_meta(ell), steps), plan_(ZigzagPlan::covering(ell, steps))
    {
    }

    const ZigzagPlan& plan() const noexcept { return plan_; }

    void step(LatticePoint& x, std::uint64_t k)
    {
        const auto ki = static_cast<std::int64_t>(k);
        x[0] = checked_add(x[0], ki <= plan_.t[seg_] ? 1 : -1);
        if (ki == plan_.tau[seg_])
            ++seg_;
    }

private:
    static WalkMetadata make_meta(const Fraction& ell)
    {
        detail::require_unit_interval(ell);
        WalkMetadata m;
        m.generator_name = "zigzag";
        m.params["ell"] = ell.to_string();
        return m;
    }

    ZigzagPlan plan_;
    std::size_t seg_ = 0;
};

/// Named return-time schedule: τ_k = k², or 2⌈c^k⌉ preceded by the start time 0.
struct TauRule {
    enum class Kind { squares, geometric };
    Kind kind = Kind::squares;
    double c = 0;

    static TauRule squares() { return {Kind::squares, 0}; }
    static TauRule geometric(double c)
    {
        if (!(c > 1.0) || !std::isfinite(c))
            throw std::invalid_argument("geometric tau rule needs c > 1");
        return {Kind::geometric, c};
    }

    /// "squares" or "geometric:<c>"
    static TauRule parse(const std::string& text)
    {
        if (text == "squares")
            return squares();
        if (text.rfind("geometric:", 0) == 0) {
            const std::string arg = text.substr(10);
            std::size_t used = 0;
            double c = 0;
            try {
                c = std::stod(arg, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != arg.size() || arg.empty())
                throw std::invalid_argument("bad geometric tau rule '" + text + "'");
            return geometric(c);
        }
        throw std::invalid_argument("unknown tau rule '" + text + "' (squares|geometric:<c>)");
    }

    std::string to_string() const
    {
        if (kind == Kind::squares)
            return "squares";
        char buf[64];
        auto r = std::to_chars(buf, buf + sizeof buf, c);
        return "geometric:" + std::string(buf, r.ptr);
    }

    /// Times from 0 up to the first one at or beyond `horizon`.
    std::vector<std::int64_t> times_covering(std::uint64_t horizon) const
    {
        std::vector<std::int64_t> out{0};
        const auto cover = static_cast<std::int64_t>(std::min<std::uint64_t>(horizon, std::numeric_limits<std::int64_t>::max()));
        for (std::int64_t k = kind == Kind::squares ? 1 : 0; out.back() < cover; ++k) {
            std::int64_t next;
            if (kind == Kind::squares) {
                next = checked_mul(k, k);
            } else {
                long double v = std::pow(static_cast<long double>(c), static_cast<long double>(k));
                const long double r = std::round(v);
                if (std::fabs(v - r) <= 1e-12L * r)
                    v = r;
                v = std::ceil(v);
                if (v > static_cast<long double>(std::numeric_limits<std::int64_t>::max() / 2))
                    throw OverflowError("tau schedule leaves the int64 range before the horizon");
                next = 2 * static_cast<std::int64_t>(v);
            }
            if (next <= out.back())
                throw std::invalid_argument("tau schedule " + to_string() + " is not strictly increasing at k=" +
                                            std::to_string(k));
            out.push_back(next);
        }
        return out;
    }
};

/// Tent excursions between prescribed zeros: rise ⌊g/2⌋, one flat step if g is odd, fall ⌊g/2⌋.
class TauTentWalk : public BasicWalk<TauTentWalk> {
public:
    TauTentWalk(const TauRule& rule, std::uint64_t steps)
        : BasicWalk(make_meta(rule), steps), times_(rule.times_covering(steps))
    {
    }

    const std::vector<std::int64_t>& schedule() const noexcept { return times_; }

    void step(LatticePoint& x, std::uint64_t k)
    {
        const auto ki = static_cast<std::int64_t>(k);
        if (ki > times_[seg_ + 1])
            ++seg_;
        const std::int64_t a = times_[seg_];
        const std::int64_t g = times_[seg_ + 1] - a;
        const std::int64_t j = ki - a;
        x[0] = std::min({j, g - j, g / 2});
    }

private:
    static WalkMetadata make_meta(const TauRule& rule)
    {
        WalkMetadata m;
        m.generator_name = "tau-tent";
        m.params["tau_rule"] = rule.to_string();
        return m;
    }

    std::vector<std::int64_t> times_;
    std::size_t seg_ = 0;
};

} // namespace rangewalk
