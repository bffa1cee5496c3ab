#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "gfra/config.hpp"

namespace gfra {

struct AnalyticProvenance {
    double tail_tolerance = 0.0;
};

struct StandardErrors {
    ServicePair<double> throughput;
    ServicePair<std::optional<double>> reliability;
};

struct MonteCarloProvenance {
    StandardErrors standard_errors;
    std::uint64_t replications = 0;
};

/// Throughput in packets/slot over the full frame and reliability as the
/// expected retrieved fraction of a frame's generated packets. Reliability is
/// empty where it is undefined (no packets of that service can be generated).
struct ServiceMetrics {
    ServicePair<double> throughput;
    ServicePair<std::optional<double>> reliability;
    std::variant<AnalyticProvenance, MonteCarloProvenance> provenance;
};

}  // namespace gfra
