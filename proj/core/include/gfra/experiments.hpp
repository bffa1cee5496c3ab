#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gfra/analytic.hpp"
#include "gfra/config.hpp"
#include "gfra/metrics.hpp"
#include "gfra/pareto.hpp"

namespace gfra {

struct AnalyticMode {};

/// Every grid point reuses the same seed (common random numbers across the grid).
struct MonteCarloMode {
    std::uint64_t frames = 100'000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

using EvaluationMode = std::variant<AnalyticMode, MonteCarloMode>;

ServiceMetrics evaluate(const SystemConfig& cfg, const EvaluationMode& mode,
                        const AnalyticOptions& options = {});

/// Inclusive grid of `points` evenly spaced values.
std::vector<double> uniform_grid(double lo, double hi, int points);

// Scenario defaults of the three studies.
SystemConfig region_study_config();     // eps = 0.5, G = 16, T = 4, L = 3
SystemConfig aps_study_config();        // G = 30, T = 4, gamma_c = 0.5, superposition
SystemConfig slots_study_config();      // G = 15, eps = 0.5, L = 3, alpha = 0.5, gamma_c = 0.5
std::vector<std::pair<double, double>> aps_study_erasure_pairs();
std::vector<int> aps_study_grid();
std::vector<int> slots_study_grid();

struct RegionPoint {
    double critical_fraction = 0.0;
    std::optional<double> alpha_requested;  // TDMA only
    std::optional<double> alpha;            // value evaluated (rounded to integer alpha*T in MC mode)
    ServiceMetrics metrics;

    RatePoint rates() const { return {metrics.throughput.critical, metrics.throughput.noncritical}; }
};

struct RegionData {
    Sharing sharing = Sharing::NonOrthogonal;
    ReceiverModel model = ReceiverModel::Collision;
    std::vector<RegionPoint> points;
    std::vector<RatePoint> frontier;
};

/// Throughput regions for both receiver models: non-orthogonal over the
/// gamma grid, then TDMA over the (gamma, alpha) grid.
std::vector<RegionData> sweep_throughput_region(const SystemConfig& base,
                                                std::span<const double> gamma_grid,
                                                std::span<const double> alpha_grid,
                                                const EvaluationMode& mode,
                                                const AnalyticOptions& options = {});

struct ApsRow {
    ReceiverModel model = ReceiverModel::Superposition;
    double access_erasure = 0.0;
    double backhaul_erasure = 0.0;
    int num_aps = 1;
    ServiceMetrics metrics;
};

std::vector<ApsRow> sweep_vs_aps(const SystemConfig& base, std::span<const int> aps_grid,
                                 std::span<const std::pair<double, double>> erasure_pairs,
                                 const EvaluationMode& mode, const AnalyticOptions& options = {});

struct SlotsRow {
    Sharing sharing = Sharing::NonOrthogonal;
    ReceiverModel model = ReceiverModel::Collision;
    int slots = 1;
    ServiceMetrics metrics;
};

/// Non-orthogonal and TDMA metrics over T for each model. In Monte Carlo mode
/// TDMA rows whose alpha*T is not an integer are skipped.
std::vector<SlotsRow> sweep_vs_slots(const SystemConfig& base, std::span<const int> slots_grid,
                                     std::span<const ReceiverModel> models,
                                     const EvaluationMode& mode,
                                     const AnalyticOptions& options = {});

/// Generic parameter sweep over up to two named axes. Parameter names are the
/// CLI keys: G, gamma-c, T, L, eps1, eps2, eps, alpha.
struct SweepAxis {
    std::string parameter;
    std::vector<double> values;
};

struct SweepSpec {
    SystemConfig base;
    std::vector<SweepAxis> axes;
    EvaluationMode mode = AnalyticMode{};
    std::vector<std::string> metrics{"R_c", "R_cbar", "Gamma_c", "Gamma_cbar"};
};

/// Sets one named parameter; throws ConfigError for unknown names.
void set_parameter(SystemConfig& cfg, const std::string& name, double value);

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Tabular sweep output; rows follow grid order.
struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

SweepResult run_sweep(const SweepSpec& spec, const AnalyticOptions& options = {});

SweepResult region_table(std::span<const RegionData> regions);
SweepResult aps_table(std::span<const ApsRow> rows);
SweepResult slots_table(std::span<const SlotsRow> rows);

}  // namespace gfra
