#include "gfra/kernels.hpp"

#include <cassert>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/binomial.hpp>

namespace gfra {

double single_survivor_probability(int n, double eps) {
    if (n <= 0) return 0.0;
    return n * (1.0 - eps) * std::pow(eps, n - 1);
}

ServicePair<double> access_success_probs(SlotLoad load, double access_erasure) {
    const double eps = access_erasure;
    return {single_survivor_probability(load.critical, eps),
            single_survivor_probability(load.noncritical, eps) * std::pow(eps, load.critical)};
}

ServicePair<double> bs_probs_collision(ApTally tally, double backhaul_erasure) {
    const double eps = backhaul_erasure;
    return {single_survivor_probability(tally.critical_copies, eps),
            single_survivor_probability(tally.noncritical_copies, eps) *
                std::pow(eps, tally.critical_copies)};
}

ServicePair<double> bs_probs_superposition(std::span<const int> copy_counts, SlotLoad load,
                                           double backhaul_erasure) {
    assert(copy_counts.size() == static_cast<std::size_t>(load.total()));
    const double eps = backhaul_erasure;
    const auto critical_end = copy_counts.begin() + load.critical;
    const int critical_copies = std::accumulate(copy_counts.begin(), critical_end, 0);
    const int noncritical_copies = std::accumulate(critical_end, copy_counts.end(), 0);

    ServicePair<double> q;
    for (int m = 0; m < load.total(); ++m) {
        const int own = copy_counts[m];
        if (own == 0) continue;
        const bool critical = m < load.critical;
        const int interferers = critical ? critical_copies - own
                                         : critical_copies + noncritical_copies - own;
        const double p = (1.0 - std::pow(eps, own)) * std::pow(eps, interferers);
        (critical ? q.critical : q.noncritical) += p;
    }
    return q;
}

ServicePair<double> bs_probs_superposition_reference(std::span<const int> copy_counts,
                                                     SlotLoad load, double backhaul_erasure) {
    assert(copy_counts.size() == static_cast<std::size_t>(load.total()));
    const double eps = backhaul_erasure;
    const int n_c = load.critical;
    const int n = load.total();

    ServicePair<double> q;
    for (int m = 0; m < n_c; ++m) {
        const int own = copy_counts[m];
        int others = 0;
        for (int k = 0; k < n_c; ++k) {
            if (k != m) others += copy_counts[k];
        }
        for (int j = 1; j <= own; ++j) {
            const int delta = others + own - j;
            q.critical += boost::math::binomial_coefficient<double>(own, j) *
                          std::pow(1.0 - eps, j) * std::pow(eps, delta);
        }
    }
    for (int m = n_c; m < n; ++m) {
        const int own = copy_counts[m];
        int other_noncritical = 0;
        for (int k = n_c; k < n; ++k) {
            if (k != m) other_noncritical += copy_counts[k];
        }
        int critical = 0;
        for (int k = 0; k < n_c; ++k) critical += copy_counts[k];
        for (int j = 1; j <= own; ++j) {
            const int delta = other_noncritical + own - j + critical;
            q.noncritical += boost::math::binomial_coefficient<double>(own, j) *
                             std::pow(1.0 - eps, j) * std::pow(eps, delta);
        }
    }
    return q;
}

}  // namespace gfra
