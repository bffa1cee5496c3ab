#include "gfra/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>

namespace gfra {

namespace {

double binomial_pmf(int k, int n, double p) {
    if (k < 0 || k > n) return 0.0;
    return boost::math::binomial_coefficient<double>(n, k) * std::pow(p, k) *
           std::pow(1.0 - p, n - k);
}

// (n + 1)^L, saturating at uint64 max.
std::uint64_t state_tuple_count(int messages, int num_aps) {
    std::uint64_t count = 1;
    const auto base = static_cast<std::uint64_t>(messages) + 1;
    for (int i = 0; i < num_aps; ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        count *= base;
    }
    return count;
}

ServicePair<double> collision_slot(SlotLoad load, const SystemConfig& cfg) {
    const auto p = access_success_probs(load, cfg.access_erasure);
    const int aps = cfg.num_aps;
    const double remaining = 1.0 - p.noncritical;
    const double critical_given_not_noncritical =
        remaining > 0.0 ? std::min(1.0, p.critical / remaining) : 0.0;

    ServicePair<double> q;
    for (int mb = 0; mb <= aps; ++mb) {
        const double wb = binomial_pmf(mb, aps, p.noncritical);
        if (wb == 0.0) continue;
        for (int mc = 0; mc <= aps - mb; ++mc) {
            const double w = wb * binomial_pmf(mc, aps - mb, critical_given_not_noncritical);
            if (w == 0.0) continue;
            const auto bs = bs_probs_collision({mc, mb}, cfg.backhaul_erasure);
            q.critical += w * bs.critical;
            q.noncritical += w * bs.noncritical;
        }
    }
    return q;
}

ServicePair<double> superposition_product_form(SlotLoad load, const SystemConfig& cfg) {
    const auto p = access_success_probs(load, cfg.access_erasure);
    const double survive = 1.0 - cfg.backhaul_erasure;
    const int aps = cfg.num_aps;

    // Per message m: E[(1 - eps^{M_m}) eps^{I}] over i.i.d. APs, where I counts
    // competing copies, equals (1 - a s)^L - (1 - (a + b) s)^L with b the
    // per-AP probability of holding m and a that of holding a competitor.
    ServicePair<double> q;
    if (load.critical > 0) {
        const double own = p.critical / load.critical;
        const double rivals = p.critical - own;
        q.critical = load.critical * (std::pow(1.0 - rivals * survive, aps) -
                                      std::pow(1.0 - (rivals + own) * survive, aps));
    }
    if (load.noncritical > 0) {
        const double own = p.noncritical / load.noncritical;
        const double rivals = p.critical + p.noncritical - own;
        q.noncritical = load.noncritical * (std::pow(1.0 - rivals * survive, aps) -
                                            std::pow(1.0 - (rivals + own) * survive, aps));
    }
    return q;
}

// Per-AP state probabilities: index 0 idle, then one entry per message.
std::vector<double> ap_state_probs(SlotLoad load, const SystemConfig& cfg) {
    const auto p = access_success_probs(load, cfg.access_erasure);
    std::vector<double> probs(load.total() + 1);
    probs[0] = std::max(0.0, 1.0 - p.critical - p.noncritical);
    for (int m = 0; m < load.critical; ++m) probs[1 + m] = p.critical / load.critical;
    for (int m = load.critical; m < load.total(); ++m) {
        probs[1 + m] = p.noncritical / load.noncritical;
    }
    return probs;
}

void enumerate_count_vectors(std::vector<int>& counts, std::size_t index, int remaining,
                             const std::vector<double>& probs, const std::vector<double>& log_fact,
                             int aps, SlotLoad load, double eps2, ServicePair<double>& q) {
    if (index + 1 == counts.size()) {
        counts[index] = remaining;
        double log_coef = log_fact[aps];
        double weight = 1.0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            log_coef -= log_fact[counts[i]];
            weight *= std::pow(probs[i], counts[i]);
        }
        if (weight == 0.0) return;
        weight *= std::round(std::exp(log_coef));
        const auto bs = bs_probs_superposition(std::span<const int>(counts).subspan(1), load, eps2);
        q.critical += weight * bs.critical;
        q.noncritical += weight * bs.noncritical;
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        counts[index] = k;
        enumerate_count_vectors(counts, index + 1, remaining - k, probs, log_fact, aps, load, eps2, q);
    }
}

ServicePair<double> superposition_count_vectors(SlotLoad load, const SystemConfig& cfg) {
    const auto probs = ap_state_probs(load, cfg);
    std::vector<double> log_fact(cfg.num_aps + 1);
    for (int i = 0; i <= cfg.num_aps; ++i) log_fact[i] = std::lgamma(i + 1.0);
    std::vector<int> counts(probs.size());
    ServicePair<double> q;
    enumerate_count_vectors(counts, 0, cfg.num_aps, probs, log_fact, cfg.num_aps, load,
                            cfg.backhaul_erasure, q);
    return q;
}

ServicePair<double> superposition_state_tuples(SlotLoad load, const SystemConfig& cfg) {
    const auto probs = ap_state_probs(load, cfg);
    const int base = load.total() + 1;
    const int aps = cfg.num_aps;
    std::vector<int> states(aps, 0);
    std::vector<int> counts(load.total());
    ServicePair<double> q;
    while (true) {
        double weight = 1.0;
        std::fill(counts.begin(), counts.end(), 0);
        for (int s : states) {
            weight *= probs[s];
            if (s > 0) ++counts[s - 1];
        }
        if (weight != 0.0) {
            const auto bs = bs_probs_superposition_reference(counts, load, cfg.backhaul_erasure);
            q.critical += weight * bs.critical;
            q.noncritical += weight * bs.noncritical;
        }
        int digit = 0;
        while (digit < aps && ++states[digit] == base) states[digit++] = 0;
        if (digit == aps) break;
    }
    return q;
}

ServicePair<double> throughput_any(const SystemConfig& raw, const AnalyticOptions& options) {
    const auto cfg = validate_config(raw);
    if (cfg.sharing == Sharing::Tdma) return tdma_metrics(cfg, options).metrics.throughput;
    return expected_slot_throughput(cfg.critical_slot_load(), cfg.noncritical_slot_load(), cfg,
                                    options);
}

std::optional<int> integral_slots(double slots) {
    const double rounded = std::round(slots);
    if (std::abs(slots - rounded) > 1e-9) return std::nullopt;
    return static_cast<int>(rounded);
}

}  // namespace

EnumerationBudgetError::EnumerationBudgetError(SlotLoad load, int num_aps, std::uint64_t budget)
    : std::runtime_error("superposition enumeration of (" + std::to_string(load.total()) +
                         "+1)^" + std::to_string(num_aps) + " AP states exceeds budget " +
                         std::to_string(budget) + " (n_c=" + std::to_string(load.critical) +
                         ", n_cbar=" + std::to_string(load.noncritical) +
                         "); use the product form or the Monte Carlo engine") {}

ServicePair<double> slot_decode_probs(SlotLoad load, const SystemConfig& cfg,
                                      const AnalyticOptions& options) {
    if (load.total() == 0) return {};
    if (cfg.receiver_model == ReceiverModel::Collision) return collision_slot(load, cfg);

    if (options.superposition_method == SuperpositionMethod::ProductForm) {
        return superposition_product_form(load, cfg);
    }
    if (state_tuple_count(load.total(), cfg.num_aps) > options.enumeration_budget) {
        throw EnumerationBudgetError(load, cfg.num_aps, options.enumeration_budget);
    }
    return options.superposition_method == SuperpositionMethod::CountVectors
               ? superposition_count_vectors(load, cfg)
               : superposition_state_tuples(load, cfg);
}

ServicePair<double> expected_slot_throughput(double critical_load, double noncritical_load,
                                             const SystemConfig& cfg,
                                             const AnalyticOptions& options) {
    const auto pmf_c = truncated_poisson_pmf(critical_load, options.truncation);
    const auto pmf_b = truncated_poisson_pmf(noncritical_load, options.truncation);
    ServicePair<double> rate;
    for (std::size_t nc = 0; nc < pmf_c.size(); ++nc) {
        for (std::size_t nb = 0; nb < pmf_b.size(); ++nb) {
            const double w = pmf_c[nc] * pmf_b[nb];
            const auto q = slot_decode_probs({static_cast<int>(nc), static_cast<int>(nb)}, cfg, options);
            rate.critical += w * q.critical;
            rate.noncritical += w * q.noncritical;
        }
    }
    return rate;
}

ServicePair<double> throughput_collision(const SystemConfig& cfg, const AnalyticOptions& options) {
    if (cfg.receiver_model != ReceiverModel::Collision) {
        throw std::invalid_argument("throughput_collision requires the collision receiver model");
    }
    return throughput_any(cfg, options);
}

ServicePair<double> throughput_superposition(const SystemConfig& cfg,
                                             const AnalyticOptions& options) {
    if (cfg.receiver_model != ReceiverModel::Superposition) {
        throw std::invalid_argument(
            "throughput_superposition requires the superposition receiver model");
    }
    return throughput_any(cfg, options);
}

std::optional<double> service_reliability(bool critical, double frame_load, double other_slot_load,
                                          int slots, const SystemConfig& cfg,
                                          const AnalyticOptions& options) {
    if (frame_load <= 0.0) return std::nullopt;
    if (slots <= 0) return 0.0;

    const auto pmf_total = truncated_poisson_pmf(frame_load, options.truncation);
    const auto pmf_other = truncated_poisson_pmf(other_slot_load, options.truncation);
    const int max_total = static_cast<int>(pmf_total.size()) - 1;

    // Expected decode of the service in a slot holding n of its packets.
    std::vector<double> decode(max_total + 1, 0.0);
    for (int n = 1; n <= max_total; ++n) {
        for (std::size_t o = 0; o < pmf_other.size(); ++o) {
            const int other = static_cast<int>(o);
            const SlotLoad load = critical ? SlotLoad{n, other} : SlotLoad{other, n};
            const auto q = slot_decode_probs(load, cfg, options);
            decode[n] += pmf_other[o] * (critical ? q.critical : q.noncritical);
        }
    }

    const double at_least_one = 1.0 - pmf_total[0];
    if (at_least_one <= 0.0) return std::nullopt;
    const double slot_share = 1.0 / slots;
    double reliability = 0.0;
    for (int k = 1; k <= max_total; ++k) {
        double first_slot = 0.0;
        for (int n = 1; n <= k; ++n) first_slot += binomial_pmf(n, k, slot_share) * decode[n];
        reliability += pmf_total[k] / at_least_one * (static_cast<double>(slots) / k) * first_slot;
    }
    return reliability;
}

ServicePair<std::optional<double>> reliability_analytic(const SystemConfig& cfg,
                                                        const AnalyticOptions& options) {
    return analyze(cfg, options).reliability;
}

TdmaMetrics tdma_metrics(const SystemConfig& raw, const AnalyticOptions& options) {
    const auto cfg = validate_config(raw);
    if (cfg.sharing != Sharing::Tdma) {
        throw std::invalid_argument("tdma_metrics requires sharing = tdma");
    }
    const double critical_frame_load = cfg.critical_fraction * cfg.total_load;
    const double noncritical_frame_load = (1.0 - cfg.critical_fraction) * cfg.total_load;
    const double critical_slots = cfg.critical_partition_slots();
    const double noncritical_slots = cfg.noncritical_partition_slots();

    TdmaMetrics out;
    if (critical_slots > 0.0) {
        out.subframe_throughput.critical =
            expected_slot_throughput(critical_frame_load / critical_slots, 0.0, cfg, options).critical;
    }
    if (noncritical_slots > 0.0) {
        out.subframe_throughput.noncritical =
            expected_slot_throughput(0.0, noncritical_frame_load / noncritical_slots, cfg, options)
                .noncritical;
    }
    out.metrics.throughput = {cfg.tdma_fraction * out.subframe_throughput.critical,
                              (1.0 - cfg.tdma_fraction) * out.subframe_throughput.noncritical};

    if (const auto slots = integral_slots(critical_slots)) {
        out.metrics.reliability.critical =
            service_reliability(true, critical_frame_load, 0.0, *slots, cfg, options);
    }
    if (const auto slots = integral_slots(noncritical_slots)) {
        out.metrics.reliability.noncritical =
            service_reliability(false, noncritical_frame_load, 0.0, *slots, cfg, options);
    }
    out.metrics.provenance = AnalyticProvenance{options.truncation.tail_tolerance};
    return out;
}

ServiceMetrics analyze(const SystemConfig& raw, const AnalyticOptions& options) {
    const auto cfg = validate_config(raw);
    if (cfg.sharing == Sharing::Tdma) return tdma_metrics(cfg, options).metrics;

    ServiceMetrics out;
    out.throughput = expected_slot_throughput(cfg.critical_slot_load(), cfg.noncritical_slot_load(),
                                              cfg, options);
    out.reliability.critical =
        service_reliability(true, cfg.critical_fraction * cfg.total_load,
                            cfg.noncritical_slot_load(), cfg.slots_per_frame, cfg, options);
    out.reliability.noncritical =
        service_reliability(false, (1.0 - cfg.critical_fraction) * cfg.total_load,
                            cfg.critical_slot_load(), cfg.slots_per_frame, cfg, options);
    out.provenance = AnalyticProvenance{options.truncation.tail_tolerance};
    return out;
}

}  // namespace gfra
