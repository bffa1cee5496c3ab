#include "gfra/config.hpp"

#include <cmath>

namespace gfra {

namespace {

constexpr double kIntegralTolerance = 1e-9;

void require_unit_interval(double value, const char* field) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ConfigError(field, std::string(field) + " out of [0,1]");
    }
}

}  // namespace

std::string_view to_string(ReceiverModel model) {
    return model == ReceiverModel::Collision ? "collision" : "superposition";
}

std::string_view to_string(Sharing sharing) {
    return sharing == Sharing::NonOrthogonal ? "nonorthogonal" : "tdma";
}

ReceiverModel parse_receiver_model(std::string_view text) {
    if (text == "collision") return ReceiverModel::Collision;
    if (text == "superposition") return ReceiverModel::Superposition;
    throw ConfigError("receiver_model", "unknown receiver model '" + std::string(text) +
                                            "' (expected collision|superposition)");
}

Sharing parse_sharing(std::string_view text) {
    if (text == "nonorthogonal" || text == "non-orthogonal") return Sharing::NonOrthogonal;
    if (text == "tdma") return Sharing::Tdma;
    throw ConfigError("sharing",
                      "unknown sharing scheme '" + std::string(text) + "' (expected nonorthogonal|tdma)");
}

double SystemConfig::critical_slot_load() const {
    return critical_fraction * total_load / slots_per_frame;
}

double SystemConfig::noncritical_slot_load() const {
    return (1.0 - critical_fraction) * total_load / slots_per_frame;
}

double SystemConfig::critical_partition_slots() const {
    return tdma_fraction * slots_per_frame;
}

double SystemConfig::noncritical_partition_slots() const {
    return (1.0 - tdma_fraction) * slots_per_frame;
}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::invalid_argument(message), field_(std::move(field)) {}

SystemConfig validate_config(const SystemConfig& raw, ConfigUse use) {
    if (!std::isfinite(raw.total_load) || raw.total_load < 0.0) {
        throw ConfigError("total_load", "total_load must be finite and >= 0");
    }
    require_unit_interval(raw.critical_fraction, "critical_fraction");
    if (raw.slots_per_frame < 1) {
        throw ConfigError("slots_per_frame", "slots_per_frame must be >= 1");
    }
    if (raw.num_aps < 1) {
        throw ConfigError("num_aps", "num_aps must be >= 1");
    }
    require_unit_interval(raw.access_erasure, "access_erasure");
    require_unit_interval(raw.backhaul_erasure, "backhaul_erasure");
    require_unit_interval(raw.tdma_fraction, "tdma_fraction");

    if (use == ConfigUse::Simulation && raw.sharing == Sharing::Tdma) {
        const double slots = raw.critical_partition_slots();
        if (std::abs(slots - std::round(slots)) > kIntegralTolerance) {
            throw ConfigError("tdma_fraction", "tdma_fraction * slots_per_frame must be an integer "
                                               "for simulation (got " + std::to_string(slots) + ")");
        }
    }
    return raw;
}

}  // namespace gfra
