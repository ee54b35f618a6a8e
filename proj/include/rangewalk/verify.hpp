#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "rangewalk/checks.hpp"
#include "rangewalk/config.hpp"
#include "rangewalk/generators.hpp"
#include "rangewalk/zigzag.hpp"

namespace rangewalk {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyParams {
    std::uint64_t paths = 1000;
    std::uint64_t len = 1000;
    /// Restricts the random-path bounds to one m; default sweeps {1, 2, 3, 5}.
    std::optional<coord_t> m;
    std::uint64_t seed = 7;
};

inline const std::vector<std::string>& verify_suites()
{
    static const std::vector<std::string> suites{"maximal-range", "sandwich",        "excursion",
                                                 "zigzag-exact",  "spiral-distinct", "oracle-range"};
    return suites;
}

namespace detail {

inline std::string violation_text(const CheckResult& c)
{
    if (c.holds())
        return "ok through n=" + std::to_string(c.checked_through);
    if (c.first_violation)
        return std::string(to_string(c.status)) + " at n=" + std::to_string(*c.first_violation);
    return std::string(to_string(c.status)) + ": " + c.detail;
}

/// Every shipped family at a fixed small configuration, each with its declared m.
inline std::vector<GeneratorConfig> shipped_configs(std::uint64_t steps, std::uint64_t seed)
{
    std::vector<GeneratorConfig> out;
    auto add = [&](GeneratorConfig c) {
        c.steps = steps;
        c.seed = seed;
        out.push_back(std::move(c));
    };
    for (double p : {0.0, 0.3, 0.5, 0.7, 1.0})
        add({.name = "srw", .p = p});
    add({.name = "ergodic", .preset = "two-state:0.1,0.3"});
    add({.name = "ergodic", .preset = "iid:0.2,0.5,0.3"});
    for (const char* preset : {"symmetric", "lazy:0.4", "reflected"})
        add({.name = "birth-death", .preset = preset});
    for (const char* ell : {"0.5", "0.1", "0.3", "0.9"})
        add({.name = "zigzag", .ell = Fraction::parse(ell)});
    add({.name = "tau-tent", .tau_rule = "squares"});
    add({.name = "tau-tent", .tau_rule = "geometric:3"});
    add({.name = "spiral2d"});
    add({.name = "linear-drift", .pattern = std::vector<coord_t>{2}, .m = 2});
    add({.name = "linear-drift", .pattern = std::vector<coord_t>{3, 0, 0}, .m = 3});
    add({.name = "linear-drift", .pattern = std::vector<coord_t>{1, -1}, .m = 1});
    return out;
}

} // namespace detail

/// M_n/m + 1 ≤ r_n over random m-bounded paths in Z and Z², and over every shipped generator.
inline std::vector<PropertyResult> verify_maximal_range(const VerifyParams& vp)
{
    std::vector<PropertyResult> out;
    const std::vector<coord_t> ms = vp.m ? std::vector<coord_t>{*vp.m} : std::vector<coord_t>{1, 2, 3, 5};
    std::uint64_t idx = 0;
    for (std::size_t d : {std::size_t{1}, std::size_t{2}}) {
        for (coord_t m : ms) {
            std::uint64_t bad = 0;
            std::string first;
            for (std::uint64_t i = 0; i < vp.paths; ++i, ++idx) {
                BoundedRandomWalk w(m, d, vp.len, trial_seed(vp.seed, idx));
                auto c = check_maximal_range(w, m, vp.len);
                if (!c.holds() && bad++ == 0)
                    first = "path " + std::to_string(i) + ": " + detail::violation_text(c);
            }
            out.push_back({"maximal-range random d=" + std::to_string(d) + " m=" + std::to_string(m), bad == 0,
                           bad == 0 ? std::to_string(vp.paths) + " paths of length " + std::to_string(vp.len)
                                    : std::to_string(bad) + " violating paths; " + first});
        }
    }
    for (const auto& cfg : detail::shipped_configs(vp.len, vp.seed)) {
        auto w = make_walk(cfg);
        const coord_t m = w.metadata().m;
        auto c = check_maximal_range(w, m, vp.len);
        std::string label = cfg.name;
        for (const auto& [k, v] : cfg.to_record())
            if (k != "name" && k != "steps" && k != "seed")
                label += " " + k + "=" + v;
        out.push_back({"maximal-range " + label, c.holds(), detail::violation_text(c)});
    }
    return out;
}

/// M_n + 1 ≤ r_n ≤ 2M_n + 1 over random unit-step paths from 0.
inline std::vector<PropertyResult> verify_sandwich(const VerifyParams& vp)
{
    std::uint64_t bad = 0;
    std::string first;
    for (std::uint64_t i = 0; i < vp.paths; ++i) {
        BoundedRandomWalk w(1, 1, vp.len, trial_seed(vp.seed, i));
        auto c = check_range_sandwich_1d(w, vp.len);
        if (!c.holds() && bad++ == 0)
            first = "path " + std::to_string(i) + ": " + detail::violation_text(c);
    }
    return {{"sandwich random m=1", bad == 0,
             bad == 0 ? std::to_string(vp.paths) + " paths of length " + std::to_string(vp.len)
                      : std::to_string(bad) + " violating paths; " + first}};
}

/// Interval-mode r_n equals set-mode r_n equals a brute-force std::set count at every n.
inline std::vector<PropertyResult> verify_oracle_range(const VerifyParams& vp)
{
    std::uint64_t bad = 0;
    std::string first;
    for (std::uint64_t i = 0; i < vp.paths; ++i) {
        BoundedRandomWalk w(1, 1, vp.len, trial_seed(vp.seed, i));
        RangeTracker interval(RangeTracker::Mode::interval, 1);
        RangeTracker set(RangeTracker::Mode::set, 1);
        std::set<coord_t> brute;
        bool ok = true;
        do {
            interval.observe(w.position());
            set.observe(w.position());
            brute.insert(w.position()[0]);
            if (interval.count() != set.count() || set.count() != brute.size()) {
                ok = false;
                if (bad == 0)
                    first = "path " + std::to_string(i) + " at n=" + std::to_string(w.index());
                break;
            }
        } while (w.advance());
        if (!ok)
            ++bad;
    }
    return {{"oracle-range interval=set=brute", bad == 0,
             bad == 0 ? std::to_string(vp.paths) + " paths of length " + std::to_string(vp.len)
                      : std::to_string(bad) + " mismatching paths; first " + first}};
}

/// Excursion bounds on the tent constructions and on symmetric random walks.
inline std::vector<PropertyResult> verify_excursion(const VerifyParams& vp)
{
    std::vector<PropertyResult> out;
    {
        ZigzagWalk z(Fraction(1, 2), vp.len);
        auto c = check_excursion_bound(z, vp.len);
        const bool tight = c.excursions > 0 && c.tight_excursions == c.excursions;
        out.push_back({"excursion zigzag ell=0.5", c.holds() && tight,
                       detail::violation_text(c) + ", " + std::to_string(c.tight_excursions) + "/" +
                           std::to_string(c.excursions) + " excursions tight"});
    }
    {
        TauTentWalk t(TauRule::squares(), vp.len);
        auto c = check_excursion_bound(t, vp.len);
        out.push_back({"excursion tau-tent squares", c.holds(),
                       detail::violation_text(c) + ", " + std::to_string(c.excursions) + " excursions"});
    }
    std::uint64_t bad = 0, unmet = 0;
    std::string first;
    for (std::uint64_t i = 0; i < vp.paths; ++i) {
        SimpleRandomWalk w(0.5, vp.len, trial_seed(vp.seed, i));
        auto c = check_excursion_bound(w, vp.len);
        if (c.status == CheckResult::Status::precondition_unmet) {
            ++unmet;
        } else if (!c.holds() && bad++ == 0) {
            first = "seed index " + std::to_string(i) + ": " + detail::violation_text(c);
        }
    }
    // a path with no return inside the horizon has no closed excursion to judge
    out.push_back({"excursion srw p=0.5", bad == 0,
                   std::to_string(vp.paths) + " paths, " + std::to_string(bad) + " violating, " +
                       std::to_string(unmet) + " vacuous (no return within horizon)" + (first.empty() ? "" : "; " + first)});
    return out;
}

/// Exact zigzag identities: x_{τ_n} = 0, x_{t_n} = (τ_n − τ_{n−1})/2, and x_{t_n}/t_n = 1/2 for ℓ = 1/2
/// and n ≥ 1; max_{1≤n≤20} x_{t_n}/t_n ≥ ℓ over the representable terms of the general construction.
inline std::vector<PropertyResult> verify_zigzag_exact(std::uint64_t horizon = 1'000'000)
{
    std::vector<PropertyResult> out;
    {
        ZigzagWalk z(Fraction(1, 2), horizon);
        const auto& plan = z.plan();
        std::size_t next_tau = 0, next_t = 0;
        bool ok = true;
        std::string why;
        do {
            const auto n = static_cast<std::int64_t>(z.index());
            const coord_t x = z.position()[0];
            if (next_t < plan.t.size() && n == plan.t[next_t]) {
                // x/t = 1/2 exactly  ⇔  2x = t; for n = 0 the start τ_{−1} = 0 makes the ratio 1
                if ((next_t > 0 && 2 * x != n) || x != (plan.tau[next_t] - plan.tau_before(next_t)) / 2) {
                    ok = false;
                    why = "peak mismatch at t=" + std::to_string(n);
                }
                ++next_t;
            }
            if (next_tau < plan.tau.size() && n == plan.tau[next_tau]) {
                if (x != 0) {
                    ok = false;
                    why = "nonzero at tau=" + std::to_string(n);
                }
                ++next_tau;
            }
        } while (ok && z.advance());
        out.push_back({"zigzag ell=0.5 iterated to " + std::to_string(horizon), ok,
                       ok ? std::to_string(next_tau) + " zeros and " + std::to_string(next_t) + " peaks exact" : why});
    }
    {
        bool ok = true;
        std::string why;
        for (std::int64_t n = 0; n <= 30; ++n) {
            const auto tau = zigzag_tau(Fraction(1, 2), 0, n);
            const auto prev = zigzag_tau(Fraction(1, 2), 0, n - 1);
            const auto general = zigzag_tau_general(Fraction(1, 2), 0, n);
            std::int64_t three = 1;
            for (std::int64_t k = 0; k < n; ++k)
                three *= 3;
            if (!tau || !prev || *tau != 2 * three || general != tau) {
                ok = false;
                why = "tau mismatch at n=" + std::to_string(n);
                break;
            }
            const std::int64_t t = (*tau + *prev) / 2;
            const std::int64_t peak = t - *prev; // rising branch evaluated at its end
            if (n >= 1 && 2 * peak != t) {
                ok = false;
                why = "ratio mismatch at n=" + std::to_string(n);
                break;
            }
        }
        out.push_back({"zigzag ell=0.5 formula n<=30", ok, ok ? "tau_n = 2*3^n and x_t/t = 1/2" : why});
    }
    for (const char* text : {"0.1", "0.3", "0.9"}) {
        const Fraction ell = Fraction::parse(text);
        std::string why;
        bool ok = true;
        try {
            const auto plan = ZigzagPlan::with_terms(ell, 21);
            // best x_{t_n}/t_n over 1 ≤ n ≤ 20 as an exact fraction
            std::int64_t best_num = 0, best_den = 1;
            for (std::size_t n = 1; n < plan.tau.size(); ++n) {
                const std::int64_t num = (plan.tau[n] - plan.tau[n - 1]) / 2;
                const std::int64_t den = plan.t[n];
                if (static_cast<__int128>(num) * best_den > static_cast<__int128>(best_num) * den) {
                    best_num = num;
                    best_den = den;
                }
            }
            ok = static_cast<__int128>(best_num) * ell.den >= static_cast<__int128>(ell.num) * best_den;
            why = "n0=" + std::to_string(plan.n0) + ", " + std::to_string(plan.tau.size()) + " terms, max x_t/t = " +
                  std::to_string(best_num) + "/" + std::to_string(best_den);
        } catch (const std::exception& e) {
            ok = false;
            why = e.what();
        }
        out.push_back({std::string("zigzag general ell=") + text, ok, why});
    }
    return out;
}

/// Square spiral: distinct points, unit steps, r_n = n + 1 and ‖x_n‖/n small.
inline std::vector<PropertyResult> verify_spiral_distinct(std::uint64_t len)
{
    Spiral2DWalk s(len);
    std::unordered_set<LatticePoint, LatticePointHash> seen;
    LatticePoint prev = s.position();
    seen.insert(prev);
    bool distinct = true, unit = true;
    while (s.advance()) {
        distinct = seen.insert(s.position()).second && distinct;
        unit = squared_distance(prev, s.position()) == 1 && unit;
        prev = s.position();
    }
    const double speed = std::sqrt(static_cast<double>(squared_distance(LatticePoint(2), prev))) /
                         static_cast<double>(s.index());
    return {{"spiral distinct points", distinct && seen.size() == len + 1,
             "r_n = " + std::to_string(seen.size()) + " at n = " + std::to_string(len)},
            {"spiral unit steps", unit, ""},
            {"spiral speed", speed <= 0.02, "|x_n|/n = " + std::to_string(speed)}};
}

inline std::vector<PropertyResult> run_suite(const std::string& suite, const VerifyParams& vp)
{
    if (suite == "maximal-range")
        return verify_maximal_range(vp);
    if (suite == "sandwich")
        return verify_sandwich(vp);
    if (suite == "excursion")
        return verify_excursion(vp);
    if (suite == "zigzag-exact")
        return verify_zigzag_exact();
    if (suite == "spiral-distinct")
        return verify_spiral_distinct(vp.len);
    if (suite == "oracle-range")
        return verify_oracle_range(vp);
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

} // namespace rangewalk
