#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rangewalk/generators.hpp"
#include "rangewalk/trajectory_csv.hpp"
#include "rangewalk/zigzag.hpp"

namespace rangewalk {

/// Flat generator configuration, as given on the command line and echoed into reports.
struct GeneratorConfig {
    std::string name;
    std::optional<double> p{};
    std::optional<Fraction> ell{};
    std::optional<std::string> preset{};
    std::optional<std::vector<coord_t>> pattern{};
    std::optional<std::string> tau_rule{};
    std::uint64_t steps = 1000;
    std::uint64_t seed = 0;
    std::optional<coord_t> m{};

    bool stochastic() const { return name == "srw" || name == "ergodic" || name == "birth-death"; }

    /// key → value record; only keys relevant to the generator appear.
    std::map<std::string, std::string> to_record() const
    {
        std::map<std::string, std::string> rec;
        rec["name"] = name;
        if (p)
            rec["p"] = detail::format_double(*p);
        if (ell)
            rec["ell"] = ell->to_string();
        if (preset)
            rec["preset"] = *preset;
        if (pattern) {
            std::string s;
            for (coord_t v : *pattern)
                s += (s.empty() ? "" : ",") + std::to_string(v);
            rec["pattern"] = s;
        }
        if (tau_rule)
            rec["tau_rule"] = *tau_rule;
        rec["steps"] = std::to_string(steps);
        if (stochastic())
            rec["seed"] = std::to_string(seed);
        if (m)
            rec["m"] = std::to_string(*m);
        return rec;
    }
};

inline const std::vector<std::string>& generator_names()
{
    static const std::vector<std::string> names{"srw",      "ergodic",  "birth-death", "zigzag",
                                                "tau-tent", "spiral2d", "linear-drift"};
    return names;
}

/// Ergodic chain presets: "two-state:<P(+→−)>,<P(−→+)>" or "iid:<p_up>,<p_stay>,<p_down>".
inline MarkovIncrementChain parse_chain_preset(const std::string& text)
{
    auto numbers = [&](const std::string& body) {
        std::vector<double> out;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            double v = 0;
            auto r = std::from_chars(item.data(), item.data() + item.size(), v);
            if (item.empty() || r.ec != std::errc{} || r.ptr != item.data() + item.size())
                throw std::invalid_argument("bad number '" + item + "' in chain preset '" + text + "'");
            out.push_back(v);
        }
        return out;
    };
    if (text.rfind("two-state:", 0) == 0) {
        const auto v = numbers(text.substr(10));
        if (v.size() != 2)
            throw std::invalid_argument("two-state preset needs two probabilities");
        for (double x : v)
            detail::require_probability(x, "switch probability");
        return MarkovIncrementChain::two_state(v[0], v[1]);
    }
    if (text.rfind("iid:", 0) == 0) {
        const auto v = numbers(text.substr(4));
        if (v.size() != 3)
            throw std::invalid_argument("iid preset needs three probabilities");
        for (double x : v)
            detail::require_probability(x, "increment probability");
        return MarkovIncrementChain::iid(v[0], v[1], v[2]);
    }
    throw std::invalid_argument("unknown ergodic preset '" + text + "' (two-state:<a>,<b>|iid:<up>,<stay>,<down>)");
}

using AnyWalkVariant = std::variant<SimpleRandomWalk, ErgodicWalk, BirthDeathWalk, ZigzagWalk, TauTentWalk,
                                    Spiral2DWalk, LinearDriftWalk, BoundedRandomWalk, TrajectoryWalk>;

/// Type-erased walk over every shipped family. Hot loops should std::visit
/// the variant once instead of calling through this wrapper per step.
class AnyWalk {
public:
    template <class W>
    AnyWalk(W w) : v_(std::move(w))
    {
    }

    const WalkMetadata& metadata() const
    {
        return std::visit([](const auto& w) -> const WalkMetadata& { return w.metadata(); }, v_);
    }
    const LatticePoint& position() const
    {
        return std::visit([](const auto& w) -> const LatticePoint& { return w.position(); }, v_);
    }
    std::uint64_t index() const
    {
        return std::visit([](const auto& w) { return w.index(); }, v_);
    }
    bool advance()
    {
        return std::visit([](auto& w) { return w.advance(); }, v_);
    }

    AnyWalkVariant& variant() noexcept { return v_; }

private:
    AnyWalkVariant v_;
};

/// Builds the named generator. `seed` overrides config.seed when given (per-trial seeds).
inline AnyWalk make_walk(const GeneratorConfig& cfg, std::optional<std::uint64_t> seed = std::nullopt)
{
    const std::uint64_t s = seed.value_or(cfg.seed);
    auto need = [&](bool present, const char* flag) {
        if (!present)
            throw std::invalid_argument("generator '" + cfg.name + "' needs --" + flag);
    };
    auto finish = [&](auto walk) {
        for (auto& [k, v] : cfg.to_record())
            walk.annotate(k, v);
        if (seed)
            walk.annotate("seed", std::to_string(s));
        return AnyWalk(std::move(walk));
    };
    if (cfg.name == "srw") {
        need(cfg.p.has_value(), "p");
        return finish(SimpleRandomWalk(*cfg.p, cfg.steps, s));
    }
    if (cfg.name == "ergodic") {
        need(cfg.preset.has_value(), "preset");
        return finish(ErgodicWalk(parse_chain_preset(*cfg.preset), cfg.steps, s, *cfg.preset));
    }
    if (cfg.name == "birth-death")
        return finish(BirthDeathWalk(BirthDeathPreset::parse(cfg.preset.value_or("symmetric")), cfg.steps, s));
    if (cfg.name == "zigzag") {
        need(cfg.ell.has_value(), "ell");
        return finish(ZigzagWalk(*cfg.ell, cfg.steps));
    }
    if (cfg.name == "tau-tent")
        return finish(TauTentWalk(TauRule::parse(cfg.tau_rule.value_or("squares")), cfg.steps));
    if (cfg.name == "spiral2d")
        return finish(Spiral2DWalk(cfg.steps));
    if (cfg.name == "linear-drift") {
        need(cfg.pattern.has_value(), "pattern");
        coord_t m = cfg.m.value_or(0);
        if (!cfg.m) {
            for (coord_t v : *cfg.pattern)
                m = std::max(m, checked_abs(v));
            m = std::max<coord_t>(m, 1);
        }
        return finish(LinearDriftWalk(m, *cfg.pattern, cfg.steps));
    }
    throw std::invalid_argument("unknown generator '" + cfg.name + "'");
}

} // namespace rangewalk
