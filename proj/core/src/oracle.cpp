#include "gfra/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace gfra {

namespace {

// eps^k (1 - eps)^(n - k) for k erased links out of n, with 0^0 = 1.
std::vector<double> pattern_weights(double eps, int n) {
    std::vector<double> w(n + 1);
    for (int erased = 0; erased <= n; ++erased) {
        double v = 1.0;
        for (int i = 0; i < erased; ++i) v *= eps;
        for (int i = erased; i < n; ++i) v *= 1.0 - eps;
        w[erased] = v;
    }
    return w;
}

// Neumaier-compensated sum; the oracle adds up to 2^27 tiny terms.
struct CompensatedSum {
    long double sum = 0.0L;
    long double carry = 0.0L;

    void add(long double x) {
        const long double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return static_cast<double>(sum + carry); }
};

}  // namespace

ServicePair<double> exact_slot_oracle(int n_critical, int n_noncritical, const SystemConfig& cfg) {
    const int n = n_critical + n_noncritical;
    const int aps = cfg.num_aps;
    if (n_critical < 0 || n_noncritical < 0) {
        throw OracleBoundError("message counts must be >= 0");
    }
    if (n * aps > kOracleMaxAccessLinks || aps > kOracleMaxAccessLinks) {
        throw OracleBoundError("exact oracle limited to (n_c+n_cbar)*L <= " +
                               std::to_string(kOracleMaxAccessLinks) + " (got " +
                               std::to_string(n * aps) + ")");
    }
    if (n == 0) return {};

    const int access_bits = n * aps;
    const auto access_w = pattern_weights(cfg.access_erasure, access_bits);
    const auto backhaul_w = pattern_weights(cfg.backhaul_erasure, aps);
    const bool superposition = cfg.receiver_model == ReceiverModel::Superposition;

    // held[ap]: message retrieved by that AP (0-based), or -1.
    std::vector<int> held(aps);
    CompensatedSum critical, noncritical;
    const std::uint64_t access_patterns = std::uint64_t{1} << access_bits;
    for (std::uint64_t received = 0; received < access_patterns; ++received) {
        const double wa = access_w[access_bits - std::popcount(received)];
        if (wa == 0.0) continue;

        for (int ap = 0; ap < aps; ++ap) {
            int crit = 0, noncrit = 0, crit_id = -1, noncrit_id = -1;
            for (int m = 0; m < n; ++m) {
                if (!((received >> (ap * n + m)) & 1U)) continue;
                if (m < n_critical) {
                    ++crit;
                    crit_id = m;
                } else {
                    ++noncrit;
                    noncrit_id = m;
                }
            }
            held[ap] = crit == 1 ? crit_id : (crit == 0 && noncrit == 1 ? noncrit_id : -1);
        }

        const std::uint32_t backhaul_patterns = 1U << aps;
        for (std::uint32_t delivered = 0; delivered < backhaul_patterns; ++delivered) {
            const double wb = backhaul_w[aps - std::popcount(delivered)];
            if (wb == 0.0) continue;

            int crit_copies = 0, noncrit_copies = 0;
            int crit_first = -1, noncrit_first = -1;
            bool crit_mixed = false, noncrit_mixed = false;
            for (int ap = 0; ap < aps; ++ap) {
                if (held[ap] < 0 || !((delivered >> ap) & 1U)) continue;
                const int id = held[ap];
                if (id < n_critical) {
                    if (crit_copies++ == 0) crit_first = id;
                    crit_mixed |= id != crit_first;
                } else {
                    if (noncrit_copies++ == 0) noncrit_first = id;
                    noncrit_mixed |= id != noncrit_first;
                }
            }

            // Collision: exactly one copy. Superposition: any copies of a single message.
            const bool crit_ok = superposition ? crit_copies > 0 && !crit_mixed : crit_copies == 1;
            const bool noncrit_ok =
                superposition ? noncrit_copies > 0 && !noncrit_mixed : noncrit_copies == 1;
            if (crit_ok) {
                critical.add(static_cast<long double>(wa) * wb);
            } else if (crit_copies == 0 && noncrit_ok) {
                noncritical.add(static_cast<long double>(wa) * wb);
            }
        }
    }
    return {critical.value(), noncritical.value()};
}

}  // namespace gfra
