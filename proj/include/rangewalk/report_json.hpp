#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "rangewalk/checks.hpp"
#include "rangewalk/experiments.hpp"
#include "rangewalk/speed.hpp"

namespace rangewalk {

using json = nlohmann::ordered_json;

inline json to_json(const WalkMetadata& meta)
{
    json j;
    j["generator"] = meta.generator_name;
    json params = json::object();
    for (const auto& [k, v] : meta.params)
        params[k] = v;
    j["params"] = params;
    j["seed"] = meta.seed ? json(*meta.seed) : json(nullptr);
    j["m"] = meta.m;
    j["d"] = meta.d;
    j["theoretical_drift"] = meta.theoretical_drift ? json(*meta.theoretical_drift) : json(nullptr);
    return j;
}

inline json to_json(const TailEstimate& t)
{
    return json{{"liminf_hat", t.liminf_hat}, {"limsup_hat", t.limsup_hat}, {"window", {t.window_lo, t.window_hi}}};
}

inline json to_json(const SpeedRow& row)
{
    json j;
    j["n"] = row.n;
    j["x_over_n"] = row.x_over_n;
    j["M_over_n"] = row.M_over_n;
    j["r_over_n"] = row.r_over_n;
    j["tau_count"] = row.tau_count;
    j["last_tau"] = row.last_tau ? json(*row.last_tau) : json(nullptr);
    j["violations"] = row.violations;
    return j;
}

inline json summary_json(const SpeedSeries& s)
{
    auto opt = [](const auto& o) { return o ? to_json(*o) : json(nullptr); };
    auto optd = [](const std::optional<double>& o) { return o ? json(*o) : json(nullptr); };
    json j;
    j["summary"] = true;
    j["config"] = to_json(s.metadata);
    j["horizon"] = s.horizon;
    j["tails"] = {{"x_over_n", opt(s.x_tail)}, {"M_over_n", opt(s.M_tail)}, {"r_over_n", opt(s.r_tail)}};
    if (s.theory)
        j["theory"] = {{"drift", s.theory->drift},
                       {"range_lower", s.theory->range_lower},
                       {"range_upper", s.theory->range_upper}};
    else
        j["theory"] = nullptr;
    j["deltas"] = {{"x_over_n", optd(s.x_delta)}, {"M_over_n", optd(s.M_delta)}, {"r_over_n", optd(s.r_delta)}};
    j["violation_count"] = s.violation_count;
    return j;
}

/// One JSON object per checkpoint, then the summary object.
inline void write_jsonl(const SpeedSeries& s, std::ostream& out)
{
    for (const auto& row : s.rows)
        out << to_json(row).dump() << '\n';
    out << summary_json(s).dump() << '\n';
}

/// n, value, series columns for external plotting.
inline void write_plot_data(const SpeedSeries& s, std::ostream& out)
{
    out << "n\tvalue\tseries\n";
    for (const auto& [name, field] : {std::pair{"x_over_n", &SpeedRow::x_over_n},
                                      std::pair{"M_over_n", &SpeedRow::M_over_n},
                                      std::pair{"r_over_n", &SpeedRow::r_over_n}}) {
        for (const auto& row : s.rows)
            out << row.n << '\t' << json(row.*field).dump() << '\t' << name << '\n';
    }
}

inline json to_json(const GeneratorConfig& cfg)
{
    json j = json::object();
    for (const auto& [k, v] : cfg.to_record())
        j[k] = v;
    return j;
}

inline json to_json(const TrialSpec& spec)
{
    json metrics = json::array();
    for (Metric m : spec.metrics)
        metrics.push_back(to_string(m));
    return json{{"generator", to_json(spec.generator)},
                {"horizon", spec.horizon},
                {"metrics", metrics},
                {"trials", spec.trials},
                {"master_seed", spec.master_seed}};
}

inline json to_json(const AggregateReport& r, bool dump_trials = false)
{
    json j;
    j["spec"] = to_json(r.spec);
    json per = json::object();
    for (Metric m : r.spec.metrics) {
        const auto& s = r.per_metric.at(m);
        json e{{"mean", s.mean}, {"stddev", s.stddev}, {"ci95", s.ci95}};
        if (s.theory) {
            e["theory"] = *s.theory;
            e["delta"] = *s.delta;
        }
        per[to_string(m)] = e;
    }
    j["per_metric"] = per;
    if (dump_trials) {
        json trials = json::array();
        for (std::size_t i = 0; i < r.trials.size(); ++i) {
            const auto& t = r.trials[i];
            json e{{"trial", i}, {"seed", t.seed}, {"x_final", t.x_final}};
            for (Metric m : r.spec.metrics)
                e[to_string(m)] = r.value(t, m);
            trials.push_back(e);
        }
        j["trials"] = trials;
    }
    return j;
}

inline void write_trials_csv(const AggregateReport& r, std::ostream& out)
{
    out << "trial,metric,value\n";
    for (std::size_t i = 0; i < r.trials.size(); ++i)
        for (Metric m : r.spec.metrics)
            out << i << ',' << to_string(m) << ',' << json(r.value(r.trials[i], m)).dump() << '\n';
}

inline json to_json(const Verdict& v)
{
    json per = json::object();
    for (const auto& m : v.metrics)
        per[to_string(m.metric)] = {{"mean", m.mean}, {"theory", m.theory}, {"delta", m.delta}, {"pass", m.pass}};
    json j{{"tol", v.tol}, {"metrics", per}};
    if (v.cross_delta)
        j["cross_check"] = {{"delta", *v.cross_delta}, {"pass", *v.cross_pass}};
    j["pass"] = v.pass();
    return j;
}

inline json to_json(const CheckResult& c)
{
    return json{{"status", to_string(c.status)},
                {"first_violation", c.first_violation ? json(*c.first_violation) : json(nullptr)},
                {"checked_through", c.checked_through},
                {"detail", c.detail}};
}

} // namespace rangewalk
