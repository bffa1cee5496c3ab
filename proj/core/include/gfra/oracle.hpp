#pragma once

#include <stdexcept>

#include "gfra/config.hpp"
#include "gfra/kernels.hpp"

namespace gfra {

/// Largest (n_c + n_cbar) * L the oracle will enumerate.
inline constexpr int kOracleMaxAccessLinks = 24;

class OracleBoundError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact BS decode probabilities for fixed slot arrivals, by summing over all
/// 2^((n_c+n_cbar)L) access-erasure patterns and all 2^L backhaul-erasure
/// patterns and applying the AP and BS rules literally. Shares no code with
/// the probability kernels.
ServicePair<double> exact_slot_oracle(int n_critical, int n_noncritical, const SystemConfig& cfg);

}  // namespace gfra
