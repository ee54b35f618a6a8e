#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rangewalk/rangewalk.hpp"

namespace rangewalk::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2 };

struct GeneratorFlags {
    std::string gen;
    std::optional<double> p;
    std::optional<std::string> ell;
    std::optional<std::string> preset;
    std::optional<std::string> pattern;
    std::optional<std::string> tau_rule;
    std::optional<std::uint64_t> steps;
    std::uint64_t seed = 0;
    std::optional<coord_t> m;

    void attach(CLI::App& app, bool gen_required)
    {
        auto* g = app.add_option("--gen", gen, "walk generator")->check(CLI::IsMember(generator_names()));
        if (gen_required)
            g->required();
        app.add_option("--p", p, "step-up probability for srw")->check(CLI::Range(0.0, 1.0));
        app.add_option("--ell", ell, "target speed for zigzag, in (0,1)");
        app.add_option("--preset", preset, "birth-death or ergodic preset");
        app.add_option("--pattern", pattern, "comma-separated integer steps for linear-drift");
        app.add_option("--tau-rule", tau_rule, "squares | geometric:<c>");
        app.add_option("--steps", steps, "number of steps (horizon)")->check(CLI::PositiveNumber);
        app.add_option("--seed", seed, "64-bit seed");
        app.add_option("--m", m, "increment bound")->check(CLI::PositiveNumber);
    }

    GeneratorConfig config() const
    {
        GeneratorConfig c;
        c.name = gen;
        c.p = p;
        if (ell) {
            Fraction f;
            try {
                f = Fraction::parse(*ell);
            } catch (const std::exception&) {
                throw std::invalid_argument("--ell: not a number: " + *ell);
            }
            if (!(f.num > 0 && f.num < f.den))
                throw std::invalid_argument("--ell: must lie strictly between 0 and 1, got " + *ell);
            c.ell = f;
        }
        c.preset = preset;
        if (pattern) {
            std::vector<coord_t> steps_list;
            std::stringstream ss(*pattern);
            std::string item;
            while (std::getline(ss, item, ',')) {
                coord_t v = 0;
                auto r = std::from_chars(item.data(), item.data() + item.size(), v);
                if (item.empty() || r.ec != std::errc{} || r.ptr != item.data() + item.size())
                    throw std::invalid_argument("--pattern: bad integer '" + item + "'");
                steps_list.push_back(v);
            }
            if (steps_list.empty())
                throw std::invalid_argument("--pattern: empty");
            c.pattern = steps_list;
        }
        c.tau_rule = tau_rule;
        c.steps = steps.value_or(1000);
        c.seed = seed;
        if (gen == "linear-drift")
            c.m = m;
        return c;
    }
};

/// Output stream to a file or the given default.
class Sink {
public:
    Sink(const std::optional<std::string>& path, std::ostream& fallback) : out_(&fallback)
    {
        if (path && *path != "-") {
            file_ = std::make_unique<std::ofstream>(*path, std::ios::binary);
            if (!*file_)
                throw std::runtime_error("cannot open '" + *path + "' for writing");
            out_ = file_.get();
        }
    }
    std::ostream& get() { return *out_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
};

inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Integer-lattice walks: range, speed and return-time statistics"};
    app.require_subcommand(1, 1);

    GeneratorFlags gflags;
    std::optional<std::string> in_path, out_path;
    std::string checkpoints = "dyadic";
    std::string metrics = "range_speed,walk_speed";
    std::optional<double> tol;
    unsigned workers = default_workers();
    bool plot_data = false, json_out = false;
    std::uint64_t trials = 1;
    std::string suite;
    VerifyParams vparams;

    auto* generate = app.add_subcommand("generate", "write a trajectory CSV");
    gflags.attach(*generate, true);
    generate->add_option("--out", out_path, "output file (default stdout)");

    GeneratorFlags aflags;
    auto* analyze = app.add_subcommand("analyze", "range/speed/return-time report as JSON lines");
    aflags.attach(*analyze, false);
    analyze->add_option("--in", in_path, "trajectory CSV to read instead of generating");
    analyze->add_option("--out", out_path, "output file (default stdout)");
    analyze->add_option("--checkpoints", checkpoints, "dyadic | arith:<k>");
    analyze->add_flag("--plot-data", plot_data, "emit n/value/series TSV instead of JSON lines");

    GeneratorFlags mflags;
    auto* mc = app.add_subcommand("mc", "Monte Carlo experiment report as JSON");
    mflags.attach(*mc, true);
    mc->add_option("--trials", trials, "number of independent trials")->check(CLI::PositiveNumber);
    mc->add_option("--metric", metrics, "comma list of range_speed,walk_speed,no_return,max_speed");
    mc->add_option("--tol", tol, "tolerance for the theory comparison; failing it exits 1")->check(CLI::NonNegativeNumber);
    mc->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    mc->add_flag("--json", json_out, "include per-trial values in the JSON report");
    mc->add_option("--out", out_path, "also write per-trial values as CSV (trial,metric,value)");

    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("--suite", suite, "property suite")->required()->check(CLI::IsMember(verify_suites()));
    verify->add_option("--paths", vparams.paths, "random paths per case")->check(CLI::PositiveNumber);
    verify->add_option("--len", vparams.len, "path length")->check(CLI::PositiveNumber);
    verify->add_option("--m", vparams.m, "increment bound for random paths")->check(CLI::PositiveNumber);
    verify->add_option("--seed", vparams.seed, "64-bit seed");
    verify->add_flag("--json", json_out, "print results as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (*generate) {
            const auto cfg = gflags.config();
            auto walk = make_walk(cfg);
            Sink sink(out_path, out);
            write_trajectory(walk, cfg.steps, sink.get());
            return ok;
        }

        if (*analyze) {
            const auto schedule = CheckpointSchedule::parse(checkpoints);
            std::optional<AnyWalk> walk;
            std::uint64_t horizon = std::numeric_limits<std::uint64_t>::max();
            if (in_path) {
                auto stream = std::make_unique<std::ifstream>(*in_path, std::ios::binary);
                if (!*stream)
                    throw std::runtime_error("cannot open '" + *in_path + "'");
                WalkMetadata meta;
                if (!aflags.gen.empty()) {
                    meta = make_walk(aflags.config()).metadata();
                } else {
                    meta.generator_name = "file";
                    meta.params["in"] = *in_path;
                    meta.m = aflags.m.value_or(1);
                }
                if (aflags.steps)
                    horizon = *aflags.steps;
                const std::size_t declared_d = meta.d;
                walk.emplace(TrajectoryWalk(std::move(stream), meta));
                if (!aflags.gen.empty() && walk->metadata().d != declared_d)
                    throw std::runtime_error("trajectory dimension does not match --gen " + aflags.gen);
            } else {
                if (aflags.gen.empty())
                    throw std::invalid_argument("analyze needs --in or --gen");
                const auto cfg = aflags.config();
                walk.emplace(make_walk(cfg));
                horizon = cfg.steps;
            }
            const auto report =
                std::visit([&](auto& w) { return speed_report(w, horizon, schedule); }, walk->variant());
            Sink sink(out_path, out);
            if (plot_data)
                write_plot_data(report, sink.get());
            else
                write_jsonl(report, sink.get());
            return ok;
        }

        if (*mc) {
            TrialSpec spec;
            spec.generator = mflags.config();
            spec.horizon = spec.generator.steps;
            spec.trials = trials;
            spec.master_seed = mflags.seed;
            spec.metrics.clear();
            std::stringstream ss(metrics);
            std::string item;
            while (std::getline(ss, item, ','))
                spec.metrics.push_back(parse_metric(item));
            const auto report = run_trials(spec, workers);
            json doc = to_json(report, json_out);
            bool failed = false;
            if (theory_value(spec.generator)) {
                const auto verdict = compare(report, tol.value_or(0.02));
                doc["verdict"] = to_json(verdict);
                failed = tol && !verdict.pass();
            } else if (tol) {
                throw std::invalid_argument("--tol: generator '" + spec.generator.name + "' has no theory target");
            }
            out << doc.dump(2) << '\n';
            if (out_path) {
                Sink sink(out_path, out);
                write_trials_csv(report, sink.get());
            }
            return failed ? check_failed : ok;
        }

        if (*verify) {
            const auto results = run_suite(suite, vparams);
            bool all = true;
            json arr = json::array();
            for (const auto& r : results) {
                all = all && r.pass;
                if (json_out)
                    arr.push_back({{"property", r.name}, {"pass", r.pass}, {"detail", r.detail}});
                else
                    out << (r.pass ? "PASS  " : "FAIL  ") << r.name << (r.detail.empty() ? "" : "  (" + r.detail + ")")
                        << '\n';
            }
            if (json_out)
                out << arr.dump(2) << '\n';
            return all ? ok : check_failed;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}

} // namespace rangewalk::cli
