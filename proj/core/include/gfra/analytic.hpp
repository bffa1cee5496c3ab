#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "gfra/config.hpp"
#include "gfra/kernels.hpp"
#include "gfra/metrics.hpp"
#include "gfra/truncation.hpp"

namespace gfra {

/// How the superposition model averages over AP copy assignments for fixed
/// slot arrivals. All three are exact; the enumerations are bounded by
/// `AnalyticOptions::enumeration_budget`.
enum class SuperpositionMethod {
    ProductForm,    // closed form from AP independence, O(1) per slot load
    CountVectors,   // multinomial count vectors with multinomial weights
    ApStateTuples,  // every (n+1)^L per-AP state tuple, literal double-sum kernel
};

struct AnalyticOptions {
    TruncationPolicy truncation;
    SuperpositionMethod superposition_method = SuperpositionMethod::ProductForm;
    std::uint64_t enumeration_budget = 1'000'000;
};

class EnumerationBudgetError : public std::runtime_error {
public:
    EnumerationBudgetError(SlotLoad load, int num_aps, std::uint64_t budget);
};

/// Base-station decode probabilities for fixed slot arrivals, averaged over AP
/// states. Collision: M_cbar ~ Bin(L, p_cbar) and, given M_cbar, each remaining
/// AP holds a critical message with probability p_c / (1 - p_cbar).
ServicePair<double> slot_decode_probs(SlotLoad load, const SystemConfig& cfg,
                                      const AnalyticOptions& options = {});

/// Expected per-slot decode probabilities for Poisson slot loads, i.e. the
/// per-slot throughputs of a non-orthogonal partition with these loads.
ServicePair<double> expected_slot_throughput(double critical_load, double noncritical_load,
                                             const SystemConfig& cfg,
                                             const AnalyticOptions& options = {});

/// Throughputs R_c, R_cbar for `cfg.receiver_model == Collision`.
ServicePair<double> throughput_collision(const SystemConfig& cfg,
                                         const AnalyticOptions& options = {});

/// Throughputs R_c, R_cbar for `cfg.receiver_model == Superposition`.
ServicePair<double> throughput_superposition(const SystemConfig& cfg,
                                             const AnalyticOptions& options = {});

/// Reliability of one service whose frame total is Poisson(`frame_load`) and
/// spread uniformly over `slots` slots, while the other service contributes
/// Poisson(`other_slot_load`) arrivals to every slot.
///
/// Conditioning on the frame total K >= 1 makes slot 1 hold Bin(K, 1/slots)
/// of the service's packets, so the expected retrieved fraction reduces to
/// sum_K Pr[K | K >= 1] (slots / K) E[decode in slot 1 | K].
std::optional<double> service_reliability(bool critical, double frame_load, double other_slot_load,
                                          int slots, const SystemConfig& cfg,
                                          const AnalyticOptions& options = {});

/// Gamma_c, Gamma_cbar for non-orthogonal sharing.
ServicePair<std::optional<double>> reliability_analytic(const SystemConfig& cfg,
                                                        const AnalyticOptions& options = {});

struct TdmaMetrics {
    ServiceMetrics metrics;                   // throughputs normalized to the full frame
    ServicePair<double> subframe_throughput;  // per-slot rates inside each partition
};

/// Inter-service TDMA: critical traffic on alpha*T slots, non-critical on the
/// rest, with no cross-service interference. Reliability requires an integer
/// partition length and is empty otherwise.
TdmaMetrics tdma_metrics(const SystemConfig& cfg, const AnalyticOptions& options = {});

/// All four metrics for any config.
ServiceMetrics analyze(const SystemConfig& cfg, const AnalyticOptions& options = {});

}  // namespace gfra
