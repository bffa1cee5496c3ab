#pragma once

#include <cstdint>
#include <vector>

#include "gfra/config.hpp"
#include "gfra/kernels.hpp"

namespace gfra {

/// Grid for the per-slot agreement check between the exact oracle, the
/// composed analytic kernels and Monte Carlo slot frequencies.
struct SlotAgreementOptions {
    int max_messages = 3;  // per service
    int max_aps = 3;
    std::vector<double> erasures{0.0, 0.3, 1.0};
    bool cross_erasures = false;  // every (eps1, eps2) pair instead of eps1 == eps2
    double kernel_tolerance = 1e-12;
    std::uint64_t draws = 100'000;  // 0 skips the Monte Carlo leg
    double sigma_bound = 4.0;
    std::uint64_t seed = 0;
};

struct SlotAgreementCase {
    SlotLoad load;
    SystemConfig cfg;
    ServicePair<double> oracle;
    ServicePair<double> kernel;
    ServicePair<double> frequency;
    bool kernel_ok = true;
    bool monte_carlo_ok = true;
};

struct SlotAgreementReport {
    std::vector<SlotAgreementCase> cases;
    std::size_t kernel_failures = 0;
    std::size_t monte_carlo_failures = 0;
    double max_kernel_error = 0.0;

    bool passed() const { return kernel_failures == 0 && monte_carlo_failures == 0; }
};

SlotAgreementReport run_slot_agreement(const SlotAgreementOptions& options = {});

}  // namespace gfra
