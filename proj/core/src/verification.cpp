#include "gfra/verification.hpp"

#include <cmath>

#include "gfra/analytic.hpp"
#include "gfra/oracle.hpp"
#include "gfra/simulation.hpp"

namespace gfra {

namespace {

bool within_sigma(double frequency, double p, std::uint64_t draws, double sigma) {
    const double se = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(draws));
    return std::abs(frequency - p) <= sigma * se + 1e-12;
}

}  // namespace

SlotAgreementReport run_slot_agreement(const SlotAgreementOptions& options) {
    std::vector<std::pair<double, double>> erasure_pairs;
    for (double e1 : options.erasures) {
        if (options.cross_erasures) {
            for (double e2 : options.erasures) erasure_pairs.emplace_back(e1, e2);
        } else {
            erasure_pairs.emplace_back(e1, e1);
        }
    }

    SlotAgreementReport report;
    std::uint64_t case_index = 0;
    for (auto model : {ReceiverModel::Collision, ReceiverModel::Superposition}) {
        for (int aps = 1; aps <= options.max_aps; ++aps) {
            for (auto [e1, e2] : erasure_pairs) {
                SystemConfig cfg;
                cfg.num_aps = aps;
                cfg.access_erasure = e1;
                cfg.backhaul_erasure = e2;
                cfg.receiver_model = model;
                for (int nc = 0; nc <= options.max_messages; ++nc) {
                    for (int nb = 0; nb <= options.max_messages; ++nb) {
                        SlotAgreementCase c;
                        c.load = {nc, nb};
                        c.cfg = cfg;
                        c.oracle = exact_slot_oracle(nc, nb, cfg);
                        c.kernel = slot_decode_probs(c.load, cfg);
                        const double err = std::max(std::abs(c.oracle.critical - c.kernel.critical),
                                                    std::abs(c.oracle.noncritical - c.kernel.noncritical));
                        report.max_kernel_error = std::max(report.max_kernel_error, err);
                        c.kernel_ok = err <= options.kernel_tolerance;

                        if (options.draws > 0) {
                            auto rng = Xoshiro256::for_stream(options.seed, case_index);
                            std::uint64_t hits_c = 0, hits_b = 0;
                            for (std::uint64_t d = 0; d < options.draws; ++d) {
                                const auto state = simulate_slot(c.load, cfg, rng);
                                hits_c += state.kind == BsState::Kind::CriticalDecoded;
                                hits_b += state.kind == BsState::Kind::NonCriticalDecoded;
                            }
                            const double n = static_cast<double>(options.draws);
                            c.frequency = {hits_c / n, hits_b / n};
                            c.monte_carlo_ok =
                                within_sigma(c.frequency.critical, c.oracle.critical, options.draws,
                                             options.sigma_bound) &&
                                within_sigma(c.frequency.noncritical, c.oracle.noncritical,
                                             options.draws, options.sigma_bound);
                        }
                        report.kernel_failures += !c.kernel_ok;
                        report.monte_carlo_failures += !c.monte_carlo_ok;
                        report.cases.push_back(c);
                        ++case_index;
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace gfra
