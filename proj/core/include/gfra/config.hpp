#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gfra {

enum class ReceiverModel { Collision, Superposition };
enum class Sharing { NonOrthogonal, Tdma };

std::string_view to_string(ReceiverModel model);
std::string_view to_string(Sharing sharing);
ReceiverModel parse_receiver_model(std::string_view text);
Sharing parse_sharing(std::string_view text);

/// Per-service pair of values; the first member is always the critical service.
template <class T>
struct ServicePair {
    T critical{};
    T noncritical{};

    bool operator==(const ServicePair&) const = default;
};

/// Scenario parameters shared by the analytic engine, the simulator and the sweeps.
///
/// Loads are per frame: the number of active critical devices in a frame is
/// Poisson with mean `critical_fraction * total_load`.
struct SystemConfig {
    double total_load = 0.0;         // G, packets/frame
    double critical_fraction = 0.5;  // gamma_c
    int slots_per_frame = 1;         // T
    int num_aps = 1;                 // L
    double access_erasure = 0.0;     // eps1
    double backhaul_erasure = 0.0;   // eps2
    ReceiverModel receiver_model = ReceiverModel::Collision;
    Sharing sharing = Sharing::NonOrthogonal;
    double tdma_fraction = 0.5;      // alpha, share of slots reserved for critical traffic

    /// Mean critical arrivals per slot when the whole frame is shared.
    double critical_slot_load() const;
    double noncritical_slot_load() const;

    /// Slots reserved for critical traffic (alpha * T); real-valued outside simulation.
    double critical_partition_slots() const;
    double noncritical_partition_slots() const;

    bool operator==(const SystemConfig&) const = default;
};

/// Field-level validation failure. `field()` names the offending SystemConfig member.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class ConfigUse { Analytic, Simulation };

/// Returns `raw` unchanged when every invariant holds, throws ConfigError otherwise.
/// Simulation use additionally requires alpha * T to be an integer under TDMA.
SystemConfig validate_config(const SystemConfig& raw, ConfigUse use = ConfigUse::Analytic);

}  // namespace gfra
