#pragma once

#include <span>

#include "gfra/config.hpp"

namespace gfra {

/// Realized transmissions in one slot.
struct SlotLoad {
    int critical = 0;
    int noncritical = 0;

    int total() const { return critical + noncritical; }
    bool operator==(const SlotLoad&) const = default;
};

/// Number of APs holding a critical / non-critical message (collision model).
struct ApTally {
    int critical_copies = 0;
    int noncritical_copies = 0;
};

/// Outcome of one backhaul slot at the base station. Message indices follow the
/// slot convention: critical 1..n_c, non-critical n_c+1..n_c+n_cbar, 0 for idle.
struct BsState {
    enum class Kind { Idle, CriticalDecoded, NonCriticalDecoded };

    Kind kind = Kind::Idle;
    int message = 0;

    static BsState idle() { return {}; }
    bool operator==(const BsState&) const = default;
};

/// n (1 - eps) eps^(n-1): probability that exactly one of n independent erasure
/// links delivers. Zero for n = 0; eps^0 = 1 even when eps = 0.
double single_survivor_probability(int n, double eps);

/// Per-AP probabilities of retrieving a critical / non-critical message.
ServicePair<double> access_success_probs(SlotLoad load, double access_erasure);

/// Base-station decode probabilities under the collision model.
ServicePair<double> bs_probs_collision(ApTally tally, double backhaul_erasure);

/// Base-station decode probabilities under the superposition model.
///
/// `copy_counts[m]` is the number of APs holding message m (0-based here: the
/// first `critical` entries are critical messages). Message m decodes iff at
/// least one of its copies survives while every copy of every other competing
/// message is erased; competing means other critical messages for a critical m,
/// and all critical plus other non-critical messages for a non-critical m.
ServicePair<double> bs_probs_superposition(std::span<const int> copy_counts, SlotLoad load,
                                           double backhaul_erasure);

/// Same quantity evaluated as the literal double sum over messages and surviving
/// subsets, sum_m sum_{j>=1} C(M_m, j) (1-eps)^j eps^(delta). Kept as the
/// reference that the factored form is tested against.
ServicePair<double> bs_probs_superposition_reference(std::span<const int> copy_counts,
                                                     SlotLoad load, double backhaul_erasure);

}  // namespace gfra
