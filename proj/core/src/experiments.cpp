#include "gfra/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gfra/simulation.hpp"

namespace gfra {

namespace {

bool is_monte_carlo(const ServiceMetrics& m) {
    return std::holds_alternative<MonteCarloProvenance>(m.provenance);
}

Cell optional_cell(const std::optional<double>& v) {
    return v ? Cell{*v} : Cell{};
}

Cell metric_cell(const ServiceMetrics& m, const std::string& name) {
    if (name == "R_c") return m.throughput.critical;
    if (name == "R_cbar") return m.throughput.noncritical;
    if (name == "Gamma_c") return optional_cell(m.reliability.critical);
    if (name == "Gamma_cbar") return optional_cell(m.reliability.noncritical);
    throw std::invalid_argument("unknown metric '" + name + "'");
}

Cell metric_se_cell(const ServiceMetrics& m, const std::string& name) {
    const auto& se = std::get<MonteCarloProvenance>(m.provenance).standard_errors;
    if (name == "R_c") return se.throughput.critical;
    if (name == "R_cbar") return se.throughput.noncritical;
    if (name == "Gamma_c") return optional_cell(se.reliability.critical);
    if (name == "Gamma_cbar") return optional_cell(se.reliability.noncritical);
    throw std::invalid_argument("unknown metric '" + name + "'");
}

// Appends value columns then, for Monte Carlo results, their standard errors.
void append_metrics(std::vector<Cell>& row, const ServiceMetrics& m,
                    const std::vector<std::string>& names, bool with_se) {
    for (const auto& n : names) row.push_back(metric_cell(m, n));
    if (!with_se) return;
    for (const auto& n : names) row.push_back(metric_se_cell(m, n));
}

void append_metric_columns(std::vector<std::string>& columns, const std::vector<std::string>& names,
                           bool with_se) {
    columns.insert(columns.end(), names.begin(), names.end());
    if (!with_se) return;
    for (const auto& n : names) columns.push_back(n + "_se");
}

Cell text(std::string_view s) { return std::string(s); }

}  // namespace

ServiceMetrics evaluate(const SystemConfig& cfg, const EvaluationMode& mode,
                        const AnalyticOptions& options) {
    if (const auto* mc = std::get_if<MonteCarloMode>(&mode)) {
        return estimate_metrics(cfg, mc->frames, mc->seed, {mc->threads}).metrics;
    }
    return analyze(cfg, options);
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
    if (points < 1) throw std::invalid_argument("grid needs at least one point");
    if (points == 1) return {lo};
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) grid[i] = lo + (hi - lo) * i / (points - 1);
    grid.back() = hi;
    return grid;
}

SystemConfig region_study_config() {
    SystemConfig cfg;
    cfg.total_load = 16.0;
    cfg.critical_fraction = 0.5;
    cfg.slots_per_frame = 4;
    cfg.num_aps = 3;
    cfg.access_erasure = 0.5;
    cfg.backhaul_erasure = 0.5;
    cfg.tdma_fraction = 0.5;
    return cfg;
}

SystemConfig aps_study_config() {
    SystemConfig cfg;
    cfg.total_load = 30.0;
    cfg.critical_fraction = 0.5;
    cfg.slots_per_frame = 4;
    cfg.num_aps = 1;
    cfg.access_erasure = 0.8;
    cfg.backhaul_erasure = 0.1;
    cfg.receiver_model = ReceiverModel::Superposition;
    return cfg;
}

SystemConfig slots_study_config() {
    SystemConfig cfg;
    cfg.total_load = 15.0;
    cfg.critical_fraction = 0.5;
    cfg.slots_per_frame = 4;
    cfg.num_aps = 3;
    cfg.access_erasure = 0.5;
    cfg.backhaul_erasure = 0.5;
    cfg.tdma_fraction = 0.5;
    return cfg;
}

std::vector<std::pair<double, double>> aps_study_erasure_pairs() {
    return {{0.8, 0.1}, {0.1, 0.8}, {0.5, 0.5}};
}

std::vector<int> aps_study_grid() {
    return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
}

std::vector<int> slots_study_grid() {
    std::vector<int> grid;
    for (int t = 2; t <= 32; t += 2) grid.push_back(t);
    return grid;
}

std::vector<RegionData> sweep_throughput_region(const SystemConfig& base,
                                                std::span<const double> gamma_grid,
                                                std::span<const double> alpha_grid,
                                                const EvaluationMode& mode,
                                                const AnalyticOptions& options) {
    const bool monte_carlo = std::holds_alternative<MonteCarloMode>(mode);
    std::vector<RegionData> regions;
    for (auto sharing : {Sharing::NonOrthogonal, Sharing::Tdma}) {
        for (auto model : {ReceiverModel::Collision, ReceiverModel::Superposition}) {
            RegionData region;
            region.sharing = sharing;
            region.model = model;
            for (double gamma : gamma_grid) {
                SystemConfig cfg = base;
                cfg.sharing = sharing;
                cfg.receiver_model = model;
                cfg.critical_fraction = gamma;
                if (sharing == Sharing::NonOrthogonal) {
                    region.points.push_back({gamma, std::nullopt, std::nullopt, evaluate(cfg, mode, options)});
                    continue;
                }
                for (double alpha : alpha_grid) {
                    double used = alpha;
                    if (monte_carlo) {
                        used = std::round(alpha * cfg.slots_per_frame) / cfg.slots_per_frame;
                    }
                    cfg.tdma_fraction = used;
                    region.points.push_back({gamma, alpha, used, evaluate(cfg, mode, options)});
                }
            }
            std::vector<RatePoint> rates;
            rates.reserve(region.points.size());
            for (const auto& p : region.points) rates.push_back(p.rates());
            region.frontier = pareto_closure(rates);
            regions.push_back(std::move(region));
        }
    }
    return regions;
}

std::vector<ApsRow> sweep_vs_aps(const SystemConfig& base, std::span<const int> aps_grid,
                                 std::span<const std::pair<double, double>> erasure_pairs,
                                 const EvaluationMode& mode, const AnalyticOptions& options) {
    std::vector<ApsRow> rows;
    for (auto [e1, e2] : erasure_pairs) {
        for (int aps : aps_grid) {
            SystemConfig cfg = base;
            cfg.access_erasure = e1;
            cfg.backhaul_erasure = e2;
            cfg.num_aps = aps;
            rows.push_back({cfg.receiver_model, e1, e2, aps, evaluate(cfg, mode, options)});
        }
    }
    return rows;
}

std::vector<SlotsRow> sweep_vs_slots(const SystemConfig& base, std::span<const int> slots_grid,
                                     std::span<const ReceiverModel> models,
                                     const EvaluationMode& mode, const AnalyticOptions& options) {
    const bool monte_carlo = std::holds_alternative<MonteCarloMode>(mode);
    std::vector<SlotsRow> rows;
    for (auto sharing : {Sharing::NonOrthogonal, Sharing::Tdma}) {
        for (auto model : models) {
            for (int slots : slots_grid) {
                SystemConfig cfg = base;
                cfg.sharing = sharing;
                cfg.receiver_model = model;
                cfg.slots_per_frame = slots;
                if (monte_carlo && sharing == Sharing::Tdma) {
                    const double split = cfg.critical_partition_slots();
                    if (std::abs(split - std::round(split)) > 1e-9) continue;
                }
                rows.push_back({sharing, model, slots, evaluate(cfg, mode, options)});
            }
        }
    }
    return rows;
}

void set_parameter(SystemConfig& cfg, const std::string& name, double value) {
    const auto as_int = [&](const char* field) {
        if (value != std::floor(value)) {
            throw ConfigError(field, name + " must be an integer");
        }
        return static_cast<int>(value);
    };
    if (name == "G") cfg.total_load = value;
    else if (name == "gamma-c") cfg.critical_fraction = value;
    else if (name == "T") cfg.slots_per_frame = as_int("slots_per_frame");
    else if (name == "L") cfg.num_aps = as_int("num_aps");
    else if (name == "eps1") cfg.access_erasure = value;
    else if (name == "eps2") cfg.backhaul_erasure = value;
    else if (name == "eps") cfg.access_erasure = cfg.backhaul_erasure = value;
    else if (name == "alpha") cfg.tdma_fraction = value;
    else throw ConfigError(name, "unknown sweep parameter '" + name + "'");
}

SweepResult run_sweep(const SweepSpec& spec, const AnalyticOptions& options) {
    if (spec.axes.size() > 2) throw std::invalid_argument("a sweep has at most two axes");
    const bool with_se = std::holds_alternative<MonteCarloMode>(spec.mode);

    SweepResult out;
    for (const auto& axis : spec.axes) out.columns.push_back(axis.parameter);
    out.columns.push_back("scheme");
    out.columns.push_back("model");
    append_metric_columns(out.columns, spec.metrics, with_se);

    const std::vector<double> single{0.0};
    const auto& outer = spec.axes.size() > 0 ? spec.axes[0].values : single;
    const auto& inner = spec.axes.size() > 1 ? spec.axes[1].values : single;
    for (double a : outer) {
        for (double b : inner) {
            SystemConfig cfg = spec.base;
            std::vector<Cell> row;
            if (spec.axes.size() > 0) {
                set_parameter(cfg, spec.axes[0].parameter, a);
                row.push_back(a);
            }
            if (spec.axes.size() > 1) {
                set_parameter(cfg, spec.axes[1].parameter, b);
                row.push_back(b);
            }
            row.push_back(text(to_string(cfg.sharing)));
            row.push_back(text(to_string(cfg.receiver_model)));
            append_metrics(row, evaluate(cfg, spec.mode, options), spec.metrics, with_se);
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

SweepResult region_table(std::span<const RegionData> regions) {
    const std::vector<std::string> metrics{"R_c", "R_cbar"};
    const bool with_se = !regions.empty() && !regions.front().points.empty() &&
                         is_monte_carlo(regions.front().points.front().metrics);
    SweepResult out;
    out.columns = {"scheme", "model", "gamma_c", "alpha_requested", "alpha"};
    append_metric_columns(out.columns, metrics, false);
    out.columns.push_back("on_frontier");
    if (with_se) {
        out.columns.push_back("R_c_se");
        out.columns.push_back("R_cbar_se");
    }
    for (const auto& region : regions) {
        for (const auto& p : region.points) {
            std::vector<Cell> row{text(to_string(region.sharing)), text(to_string(region.model)),
                                  p.critical_fraction, optional_cell(p.alpha_requested),
                                  optional_cell(p.alpha)};
            append_metrics(row, p.metrics, metrics, false);
            const auto r = p.rates();
            const bool on_frontier =
                std::find(region.frontier.begin(), region.frontier.end(), r) != region.frontier.end();
            row.push_back(std::int64_t{on_frontier});
            if (with_se) {
                row.push_back(metric_se_cell(p.metrics, "R_c"));
                row.push_back(metric_se_cell(p.metrics, "R_cbar"));
            }
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

SweepResult aps_table(std::span<const ApsRow> rows) {
    const std::vector<std::string> metrics{"R_c", "R_cbar"};
    const bool with_se = !rows.empty() && is_monte_carlo(rows.front().metrics);
    SweepResult out;
    out.columns = {"model", "eps1", "eps2", "L"};
    append_metric_columns(out.columns, metrics, with_se);
    for (const auto& r : rows) {
        std::vector<Cell> row{text(to_string(r.model)), r.access_erasure, r.backhaul_erasure,
                              std::int64_t{r.num_aps}};
        append_metrics(row, r.metrics, metrics, with_se);
        out.rows.push_back(std::move(row));
    }
    return out;
}

SweepResult slots_table(std::span<const SlotsRow> rows) {
    const std::vector<std::string> metrics{"R_c", "R_cbar", "Gamma_c", "Gamma_cbar"};
    const bool with_se = !rows.empty() && is_monte_carlo(rows.front().metrics);
    SweepResult out;
    out.columns = {"scheme", "model", "T"};
    append_metric_columns(out.columns, metrics, with_se);
    for (const auto& r : rows) {
        std::vector<Cell> row{text(to_string(r.sharing)), text(to_string(r.model)),
                              std::int64_t{r.slots}};
        append_metrics(row, r.metrics, metrics, with_se);
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace gfra
