#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "gfra/config.hpp"
#include "gfra/experiments.hpp"
#include "gfra/metrics.hpp"

namespace gfra::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Floating-point text with 12 significant digits.
std::string format_real(double v);

/// `v` rounded to 12 significant digits, for JSON metric values.
double round_real(double v);

Json config_json(const SystemConfig& cfg);
Json metrics_json(const ServicePair<double>& throughput,
                            const ServicePair<std::optional<double>>& reliability);

void write_csv(std::ostream& out, const SweepResult& table);
Json table_json(const SweepResult& table);

}  // namespace gfra::cli
