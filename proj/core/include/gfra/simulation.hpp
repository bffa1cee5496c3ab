#pragma once

#include <cstdint>
#include <vector>

#include "gfra/config.hpp"
#include "gfra/kernels.hpp"
#include "gfra/metrics.hpp"
#include "gfra/rng.hpp"

namespace gfra {

struct FrameResult {
    std::vector<SlotLoad> slots;  // length T
    ServicePair<int> decoded;
    ServicePair<int> generated;
};

struct MetricsEstimate {
    ServiceMetrics metrics;  // provenance holds standard errors and the frame count
    std::uint64_t frames_total = 0;
    ServicePair<std::uint64_t> frames_excluded;  // frames with no packet of that service
    std::uint64_t seed = 0;

    const StandardErrors& standard_errors() const;
};

/// One realization of a slot with fixed arrivals: per-(device, AP) access
/// erasures, AP resolution, per-AP backhaul erasures and BS resolution.
/// Randomness is consumed identically for both receiver models.
BsState simulate_slot(SlotLoad load, const SystemConfig& cfg, Xoshiro256& rng);

/// One frame: Poisson device counts for the whole frame, uniform slot choice
/// (within the service's partition under TDMA), then `simulate_slot` per slot.
FrameResult simulate_frame(const SystemConfig& cfg, Xoshiro256& rng);

struct EstimateOptions {
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Monte Carlo estimates of all four metrics. Frame i draws from
/// `Xoshiro256::for_stream(seed, i)` and partial sums are reduced in a fixed
/// block order, so the result is bit-identical for any thread count.
MetricsEstimate estimate_metrics(const SystemConfig& cfg, std::uint64_t n_frames,
                                 std::uint64_t seed, const EstimateOptions& options = {});

}  // namespace gfra
