#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "config_file.hpp"
#include "gfra/analytic.hpp"
#include "gfra/experiments.hpp"
#include "gfra/simulation.hpp"
#include "gfra/verification.hpp"
#include "output.hpp"

namespace gfra::cli {

namespace {

constexpr const char* kTailEnv = "GFRA_TAIL_TOLERANCE";
constexpr const char* kMaxCountEnv = "GFRA_MAX_COUNT";

const std::set<std::string>& run_keys() {
    static const std::set<std::string> keys = [] {
        auto k = system_config_keys();
        k.insert({"seed", "frames", "tail-tol", "max-count"});
        return k;
    }();
    return keys;
}

const std::set<std::string>& sweep_file_keys() {
    static const std::set<std::string> keys = [] {
        auto k = run_keys();
        k.insert({"axis1", "axis2", "mode", "metrics"});
        return k;
    }();
    return keys;
}

/// Flag values bound by CLI11; only flags actually given override file values.
struct ConfigFlags {
    std::map<std::string, std::string> storage;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;

    void attach(CLI::App& cmd) {
        static const std::map<std::string, std::string> help{
            {"G", "total load, packets/frame"},
            {"gamma-c", "critical fraction of the load"},
            {"T", "slots per frame"},
            {"L", "number of access points"},
            {"eps1", "access erasure probability"},
            {"eps2", "backhaul erasure probability"},
            {"eps", "sets both erasure probabilities"},
            {"model", "collision | superposition"},
            {"sharing", "nonorthogonal | tdma"},
            {"alpha", "TDMA fraction of slots for critical traffic"},
            {"tail-tol", "Poisson tail tolerance for the analytic engine"},
            {"max-count", "cap on the Poisson truncation point"},
        };
        for (const auto& [key, text] : help) {
            options[key] = cmd.add_option("--" + key, storage[key], text);
        }
        cmd.add_option("--config", config_path, "key=value config file or JSON results file");
    }

    KeyValues resolve(const std::set<std::string>& file_keys) const {
        KeyValues kv;
        if (!config_path.empty()) kv = read_config_file(config_path, file_keys);
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) kv.set(key, storage.at(key), "--" + key);
        }
        return kv;
    }
};

struct OutputFlags {
    std::string format = "json";
    std::string path;

    void attach(CLI::App& cmd) {
        cmd.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        cmd.add_option("--output", path, "output file (default: standard output)");
    }
};

// Precedence: flag > environment > config file > default.
AnalyticOptions analytic_options(const KeyValues& kv) {
    AnalyticOptions opts;
    KeyValues merged = kv;
    const auto from_env = [&](const char* env, const std::string& key) {
        if (kv.origin.count(key) && kv.origin.at(key).starts_with("--")) return;
        if (const char* v = std::getenv(env)) merged.set(key, v, env);
    };
    from_env(kTailEnv, "tail-tol");
    from_env(kMaxCountEnv, "max-count");
    if (merged.has("tail-tol")) {
        opts.truncation.tail_tolerance = parse_real(merged, "tail-tol");
        if (!(opts.truncation.tail_tolerance > 0.0 && opts.truncation.tail_tolerance < 1.0)) {
            throw ConfigInputError("tail-tol", merged.origin.at("tail-tol"), "tail-tol must lie in (0,1)");
        }
    }
    if (merged.has("max-count")) {
        opts.truncation.max_count = static_cast<int>(parse_integer(merged, "max-count"));
    }
    return opts;
}

void emit(const std::string& text, const OutputFlags& flags, std::ostream& out) {
    if (flags.path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(flags.path, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
        throw std::runtime_error("cannot write output path '" + flags.path + "'");
    }
}

std::string render(const Json& doc, const SweepResult& table, const OutputFlags& flags) {
    std::ostringstream s;
    if (flags.format == "csv") {
        write_csv(s, table);
    } else {
        s << doc.dump(2) << '\n';
    }
    return s.str();
}

SweepResult config_row_table(const SystemConfig& cfg) {
    SweepResult t;
    t.columns = {"G", "gamma-c", "T", "L", "eps1", "eps2", "model", "sharing", "alpha"};
    t.rows.push_back({cfg.total_load, cfg.critical_fraction, std::int64_t{cfg.slots_per_frame},
                      std::int64_t{cfg.num_aps}, cfg.access_erasure, cfg.backhaul_erasure,
                      std::string(to_string(cfg.receiver_model)), std::string(to_string(cfg.sharing)),
                      cfg.tdma_fraction});
    return t;
}

Cell optional_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

std::uint64_t resolve_u64(const KeyValues& kv, const std::string& key, CLI::Option* flag,
                          std::uint64_t flag_value) {
    if (flag->count() > 0 || !kv.has(key)) return flag_value;
    const long long v = parse_integer(kv, key);
    if (v < 0) throw ConfigInputError(key, kv.origin.at(key), key + " must be >= 0");
    return static_cast<std::uint64_t>(v);
}

int run_analytic(const ConfigFlags& cfg_flags, const OutputFlags& out_flags, std::ostream& out) {
    const KeyValues kv = cfg_flags.resolve(run_keys());
    const SystemConfig cfg = validate_config(config_from_values(kv));
    const AnalyticOptions opts = analytic_options(kv);
    const ServiceMetrics m = analyze(cfg, opts);

    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "analytic";
    doc["config"] = config_json(cfg);
    doc["truncation"] = {{"tail-tol", opts.truncation.tail_tolerance},
                         {"max-count", opts.truncation.max_count}};
    doc["metrics"] = metrics_json(m.throughput, m.reliability);
    if (cfg.sharing == Sharing::Tdma) {
        const auto sub = tdma_metrics(cfg, opts).subframe_throughput;
        doc["subframe_throughput"] = {{"R_c", round_real(sub.critical)},
                                      {"R_cbar", round_real(sub.noncritical)}};
    }

    SweepResult table = config_row_table(cfg);
    table.columns.insert(table.columns.end(), {"R_c", "R_cbar", "Gamma_c", "Gamma_cbar"});
    table.rows[0].insert(table.rows[0].end(),
                         {m.throughput.critical, m.throughput.noncritical,
                          optional_cell(m.reliability.critical), optional_cell(m.reliability.noncritical)});
    emit(render(doc, table, out_flags), out_flags, out);
    return kOk;
}

struct SimulateFlags {
    std::uint64_t seed = 0;
    std::uint64_t frames = 100'000;
    unsigned threads = 0;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* frames_opt = nullptr;

    void attach(CLI::App& cmd) {
        seed_opt = cmd.add_option("--seed", seed, "64-bit seed (default 0)");
        frames_opt = cmd.add_option("--frames", frames, "number of simulated frames");
        cmd.add_option("--threads", threads, "worker threads (0 = all cores)");
    }
};

int run_simulate(const ConfigFlags& cfg_flags, const OutputFlags& out_flags,
                 const SimulateFlags& sim, std::ostream& out) {
    const KeyValues kv = cfg_flags.resolve(run_keys());
    const SystemConfig cfg = validate_config(config_from_values(kv), ConfigUse::Simulation);
    const std::uint64_t seed = resolve_u64(kv, "seed", sim.seed_opt, sim.seed);
    const std::uint64_t frames = resolve_u64(kv, "frames", sim.frames_opt, sim.frames);
    if (frames < 1) throw ConfigInputError("frames", "", "frames must be >= 1");

    const MetricsEstimate est = estimate_metrics(cfg, frames, seed, {sim.threads});
    const auto& se = est.standard_errors();

    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "simulate";
    doc["config"] = config_json(cfg);
    doc["seed"] = seed;
    doc["frames"] = frames;
    doc["metrics"] = metrics_json(est.metrics.throughput, est.metrics.reliability);
    doc["standard_errors"] = metrics_json(se.throughput, se.reliability);
    doc["frames_excluded"] = {{"critical", est.frames_excluded.critical},
                              {"noncritical", est.frames_excluded.noncritical}};

    SweepResult table = config_row_table(cfg);
    table.columns.insert(table.columns.end(),
                         {"R_c", "R_cbar", "Gamma_c", "Gamma_cbar", "R_c_se", "R_cbar_se",
                          "Gamma_c_se", "Gamma_cbar_se", "frames", "seed", "frames_excluded_c",
                          "frames_excluded_cbar"});
    const auto& mt = est.metrics;
    table.rows[0].insert(
        table.rows[0].end(),
        {mt.throughput.critical, mt.throughput.noncritical, optional_cell(mt.reliability.critical),
         optional_cell(mt.reliability.noncritical), se.throughput.critical, se.throughput.noncritical,
         optional_cell(se.reliability.critical), optional_cell(se.reliability.noncritical),
         static_cast<std::int64_t>(frames), std::to_string(seed),
         static_cast<std::int64_t>(est.frames_excluded.critical),
         static_cast<std::int64_t>(est.frames_excluded.noncritical)});
    emit(render(doc, table, out_flags), out_flags, out);
    return kOk;
}

struct SweepFlags {
    std::string spec;
    std::string mode = "analytic";
    int gamma_points = 41;
    int alpha_points = 21;
    CLI::Option* mode_opt = nullptr;
    SimulateFlags sim;

    void attach(CLI::App& cmd) {
        cmd.add_option("--spec", spec, "fig2 | fig3 | fig4 | path to a sweep file")->required();
        mode_opt = cmd.add_option("--mode", mode, "analytic | montecarlo")
                       ->check(CLI::IsMember({"analytic", "montecarlo"}));
        cmd.add_option("--gamma-points", gamma_points, "gamma_c grid size for fig2")
            ->check(CLI::PositiveNumber);
        cmd.add_option("--alpha-points", alpha_points, "alpha grid size for fig2")
            ->check(CLI::PositiveNumber);
        sim.attach(cmd);
    }
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) parts.push_back(item.substr(b, e - b + 1));
    }
    return parts;
}

// "gamma-c: 0, 0.25, 0.5"
SweepAxis parse_axis(const KeyValues& kv, const std::string& key) {
    const std::string& text = kv.values.at(key);
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigInputError(key, kv.origin.at(key), "expected 'parameter: v1, v2, ...'");
    }
    SweepAxis axis;
    axis.parameter = split(text.substr(0, colon), ',').at(0);
    KeyValues scratch;
    for (const auto& v : split(text.substr(colon + 1), ',')) {
        scratch.set(key, v, kv.origin.at(key));
        axis.values.push_back(parse_real(scratch, key));
    }
    if (axis.values.empty()) throw ConfigInputError(key, kv.origin.at(key), "axis has no values");
    if (!system_config_keys().count(axis.parameter) || axis.parameter == "model" ||
        axis.parameter == "sharing") {
        throw ConfigInputError(key, kv.origin.at(key), "cannot sweep '" + axis.parameter + "'");
    }
    return axis;
}

int run_sweep_cmd(const ConfigFlags& cfg_flags, const OutputFlags& out_flags,
                  const SweepFlags& sweep, std::ostream& out) {
    const bool canned = sweep.spec == "fig2" || sweep.spec == "fig3" || sweep.spec == "fig4";
    KeyValues kv;
    if (!canned) kv = read_config_file(sweep.spec, sweep_file_keys());
    {
        const KeyValues overrides = cfg_flags.resolve(run_keys());
        for (const auto& [k, v] : overrides.values) kv.set(k, v, overrides.origin.at(k));
    }

    std::string mode_name = sweep.mode;
    if (sweep.mode_opt->count() == 0 && kv.has("mode")) mode_name = kv.values.at("mode");
    EvaluationMode mode = AnalyticMode{};
    if (mode_name == "montecarlo") {
        MonteCarloMode mc;
        mc.seed = resolve_u64(kv, "seed", sweep.sim.seed_opt, sweep.sim.seed);
        mc.frames = resolve_u64(kv, "frames", sweep.sim.frames_opt, sweep.sim.frames);
        mc.threads = sweep.sim.threads;
        if (mc.frames < 1) throw ConfigInputError("frames", "", "frames must be >= 1");
        mode = mc;
    } else if (mode_name != "analytic") {
        throw ConfigInputError("mode", kv.origin.count("mode") ? kv.origin.at("mode") : "",
                               "mode must be analytic or montecarlo");
    }
    const AnalyticOptions opts = analytic_options(kv);

    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "sweep";
    doc["spec"] = sweep.spec;
    doc["mode"] = mode_name;
    if (const auto* mc = std::get_if<MonteCarloMode>(&mode)) {
        doc["seed"] = mc->seed;
        doc["frames"] = mc->frames;
    }

    SweepResult table;
    SystemConfig base;
    if (sweep.spec == "fig2") {
        base = region_study_config();
        apply_values(base, kv);
        const auto regions =
            sweep_throughput_region(base, uniform_grid(0.0, 1.0, sweep.gamma_points),
                                    uniform_grid(0.0, 1.0, sweep.alpha_points), mode, opts);
        table = region_table(regions);
        Json frontiers = Json::array();
        for (const auto& r : regions) {
            Json pts = Json::array();
            for (const auto& p : r.frontier) pts.push_back({round_real(p.critical), round_real(p.noncritical)});
            frontiers.push_back({{"scheme", to_string(r.sharing)}, {"model", to_string(r.model)},
                                 {"frontier", pts}});
        }
        doc["frontiers"] = frontiers;
    } else if (sweep.spec == "fig3") {
        base = aps_study_config();
        apply_values(base, kv);
        auto pairs = aps_study_erasure_pairs();
        if (kv.has("eps") || kv.has("eps1") || kv.has("eps2")) {
            pairs = {{base.access_erasure, base.backhaul_erasure}};
        }
        const auto grid = aps_study_grid();
        table = aps_table(sweep_vs_aps(base, grid, pairs, mode, opts));
    } else if (sweep.spec == "fig4") {
        base = slots_study_config();
        apply_values(base, kv);
        std::vector<ReceiverModel> models{ReceiverModel::Collision, ReceiverModel::Superposition};
        if (kv.has("model")) models = {base.receiver_model};
        const auto grid = slots_study_grid();
        table = slots_table(sweep_vs_slots(base, grid, models, mode, opts));
    } else {
        SweepSpec spec;
        spec.base = config_from_values(kv);
        base = spec.base;
        spec.mode = mode;
        for (const char* axis : {"axis1", "axis2"}) {
            if (kv.has(axis)) spec.axes.push_back(parse_axis(kv, axis));
        }
        if (kv.has("metrics")) {
            spec.metrics = split(kv.values.at("metrics"), ',');
            for (const auto& m : spec.metrics) {
                if (m != "R_c" && m != "R_cbar" && m != "Gamma_c" && m != "Gamma_cbar") {
                    throw ConfigInputError("metrics", kv.origin.at("metrics"), "unknown metric '" + m + "'");
                }
            }
        }
        table = run_sweep(spec, opts);
    }
    doc["base_config"] = config_json(base);
    const Json body = table_json(table);
    doc["columns"] = body["columns"];
    doc["rows"] = body["rows"];
    emit(render(doc, table, out_flags), out_flags, out);
    return kOk;
}

struct VerifyFlags {
    std::uint64_t draws = 100'000;
    std::uint64_t seed = 0;
    int messages = 3;
    int aps = 3;
    bool cross = false;
    double tolerance = 1e-12;

    void attach(CLI::App& cmd) {
        cmd.add_option("--tolerance", tolerance, "max |kernel - oracle| per case");
        cmd.add_option("--draws", draws, "Monte Carlo draws per case (0 skips)");
        cmd.add_option("--seed", seed, "seed for the Monte Carlo leg");
        cmd.add_option("--messages", messages, "max messages per service")->check(CLI::Range(0, 4));
        cmd.add_option("--aps", aps, "max number of APs")->check(CLI::Range(1, 3));
        cmd.add_flag("--cross-erasures", cross, "use every (eps1, eps2) pair");
    }
};

int run_verify(const VerifyFlags& flags, std::ostream& out) {
    SlotAgreementOptions opts;
    opts.draws = flags.draws;
    opts.seed = flags.seed;
    opts.max_messages = flags.messages;
    opts.max_aps = flags.aps;
    opts.cross_erasures = flags.cross;
    opts.kernel_tolerance = flags.tolerance;
    const auto report = run_slot_agreement(opts);

    out << "kernel-vs-oracle: " << report.cases.size() << " cases, max |error| "
        << format_real(report.max_kernel_error) << ", failures " << report.kernel_failures << '\n';
    out << "montecarlo-vs-oracle: " << report.cases.size() << " cases, " << flags.draws
        << " draws, 4-sigma failures " << report.monte_carlo_failures << '\n';
    for (const auto& c : report.cases) {
        if (c.kernel_ok && c.monte_carlo_ok) continue;
        out << "FAIL model=" << to_string(c.cfg.receiver_model) << " L=" << c.cfg.num_aps
            << " eps1=" << format_real(c.cfg.access_erasure)
            << " eps2=" << format_real(c.cfg.backhaul_erasure) << " n_c=" << c.load.critical
            << " n_cbar=" << c.load.noncritical << " oracle=(" << format_real(c.oracle.critical) << ","
            << format_real(c.oracle.noncritical) << ") kernel=(" << format_real(c.kernel.critical) << ","
            << format_real(c.kernel.noncritical) << ") freq=(" << format_real(c.frequency.critical)
            << "," << format_real(c.frequency.noncritical) << ")\n";
    }
    out << (report.passed() ? "verify: PASS" : "verify: FAIL") << '\n';
    return report.passed() ? kOk : kVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grant-free random access with relay space diversity: analytic and Monte Carlo metrics"};
    app.require_subcommand(1, 1);

    auto* analytic = app.add_subcommand("analytic", "closed-form/truncated expectation metrics");
    ConfigFlags analytic_cfg;
    OutputFlags analytic_out;
    analytic_cfg.attach(*analytic);
    analytic_out.attach(*analytic);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
    ConfigFlags simulate_cfg;
    OutputFlags simulate_out;
    SimulateFlags simulate_flags;
    simulate_cfg.attach(*simulate);
    simulate_out.attach(*simulate);
    simulate_flags.attach(*simulate);

    auto* sweep = app.add_subcommand("sweep", "parameter sweeps (fig2 | fig3 | fig4 | file)");
    ConfigFlags sweep_cfg;
    OutputFlags sweep_out;
    SweepFlags sweep_flags;
    sweep_cfg.attach(*sweep);
    sweep_out.attach(*sweep);
    sweep_flags.attach(*sweep);

    auto* verify = app.add_subcommand("verify", "exact oracle vs kernels vs Monte Carlo");
    VerifyFlags verify_flags;
    verify_flags.attach(*verify);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kConfigError;
    }

    try {
        if (*analytic) return run_analytic(analytic_cfg, analytic_out, out);
        if (*simulate) return run_simulate(simulate_cfg, simulate_out, simulate_flags, out);
        if (*sweep) return run_sweep_cmd(sweep_cfg, sweep_out, sweep_flags, out);
        if (*verify) return run_verify(verify_flags, out);
    } catch (const ConfigInputError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << " [field " << e.field() << "]\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kConfigError;
}

}  // namespace gfra::cli
