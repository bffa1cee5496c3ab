#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gfra/config.hpp"
#include "gfra/kernels.hpp"

namespace gfra {
namespace {

// Brute force over the 2^n erasure patterns of the n links into one AP.
ServicePair<double> enumerate_access(SlotLoad load, double eps) {
    const int n = load.total();
    ServicePair<double> p;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        double w = 1.0;
        int crit = 0, noncrit = 0;
        for (int m = 0; m < n; ++m) {
            const bool received = (mask >> m) & 1U;
            w *= received ? 1.0 - eps : eps;
            if (received) (m < load.critical ? crit : noncrit)++;
        }
        if (crit == 1) p.critical += w;
        if (crit == 0 && noncrit == 1) p.noncritical += w;
    }
    return p;
}

// Brute force over backhaul patterns for copies tagged by message index.
ServicePair<double> enumerate_backhaul(const std::vector<int>& copy_owner, int n_critical,
                                       double eps, bool superposition) {
    const int copies = static_cast<int>(copy_owner.size());
    ServicePair<double> q;
    for (unsigned mask = 0; mask < (1U << copies); ++mask) {
        double w = 1.0;
        std::vector<int> crit, noncrit;
        for (int i = 0; i < copies; ++i) {
            const bool survives = (mask >> i) & 1U;
            w *= survives ? 1.0 - eps : eps;
            if (survives) (copy_owner[i] < n_critical ? crit : noncrit).push_back(copy_owner[i]);
        }
        const auto single = [&](const std::vector<int>& v) {
            if (v.empty()) return false;
            if (!superposition) return v.size() == 1;
            for (int id : v) {
                if (id != v.front()) return false;
            }
            return true;
        };
        if (single(crit)) q.critical += w;
        else if (crit.empty() && single(noncrit)) q.noncritical += w;
    }
    return q;
}

std::vector<int> owners_from_counts(const std::vector<int>& counts) {
    std::vector<int> owners;
    for (int m = 0; m < static_cast<int>(counts.size()); ++m) {
        for (int k = 0; k < counts[m]; ++k) owners.push_back(m);
    }
    return owners;
}

TEST(ValidateConfig, AcceptsRegionStudyConfig) {
    SystemConfig cfg;
    cfg.total_load = 16;
    cfg.critical_fraction = 0.5;
    cfg.slots_per_frame = 4;
    cfg.num_aps = 3;
    cfg.access_erasure = cfg.backhaul_erasure = 0.5;
    const auto v = validate_config(cfg);
    EXPECT_EQ(v, cfg);
    EXPECT_DOUBLE_EQ(v.critical_slot_load(), 2.0);
    EXPECT_DOUBLE_EQ(v.noncritical_slot_load(), 2.0);
}

TEST(ValidateConfig, RejectsCriticalFractionAboveOne) {
    SystemConfig cfg;
    cfg.critical_fraction = 1.2;
    try {
        validate_config(cfg);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "critical_fraction");
        EXPECT_STREQ(e.what(), "critical_fraction out of [0,1]");
    }
}

TEST(ValidateConfig, NamesEachViolatedField) {
    const auto field_of = [](auto mutate) {
        SystemConfig cfg;
        mutate(cfg);
        try {
            validate_config(cfg);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string("<valid>");
    };
    EXPECT_EQ(field_of([](SystemConfig& c) { c.total_load = -1; }), "total_load");
    EXPECT_EQ(field_of([](SystemConfig& c) { c.total_load = NAN; }), "total_load");
    EXPECT_EQ(field_of([](SystemConfig& c) { c.slots_per_frame = 0; }), "slots_per_frame");
    EXPECT_EQ(field_of([](SystemConfig& c) { c.num_aps = 0; }), "num_aps");
    EXPECT_EQ(field_of([](SystemConfig& c) { c.access_erasure = 1.5; }), "access_erasure");
    EXPECT_EQ(field_of([](SystemConfig& c) { c.backhaul_erasure = -0.1; }), "backhaul_erasure");
    EXPECT_EQ(field_of([](SystemConfig& c) { c.tdma_fraction = 2; }), "tdma_fraction");
}

TEST(ValidateConfig, TdmaSimulationNeedsIntegerPartition) {
    SystemConfig cfg;
    cfg.total_load = 15;
    cfg.critical_fraction = 0.5;
    cfg.slots_per_frame = 4;
    cfg.sharing = Sharing::Tdma;
    cfg.tdma_fraction = 0.5;
    EXPECT_NO_THROW(validate_config(cfg, ConfigUse::Simulation));

    cfg.tdma_fraction = 0.3;
    EXPECT_NO_THROW(validate_config(cfg, ConfigUse::Analytic));
    EXPECT_THROW(validate_config(cfg, ConfigUse::Simulation), ConfigError);
}

TEST(ValidateConfig, ParsesEnumNames) {
    EXPECT_EQ(parse_receiver_model("superposition"), ReceiverModel::Superposition);
    EXPECT_EQ(parse_sharing("tdma"), Sharing::Tdma);
    EXPECT_THROW(parse_receiver_model("capture"), ConfigError);
    EXPECT_EQ(to_string(parse_sharing(to_string(Sharing::NonOrthogonal))), "nonorthogonal");
}

TEST(AccessSuccessProbs, Examples) {
    auto p = access_success_probs({1, 0}, 0.5);
    EXPECT_DOUBLE_EQ(p.critical, 0.5);
    EXPECT_DOUBLE_EQ(p.noncritical, 0.0);

    EXPECT_DOUBLE_EQ(access_success_probs({2, 0}, 0.5).critical, 0.5);

    p = access_success_probs({1, 1}, 0.5);
    EXPECT_DOUBLE_EQ(p.noncritical, 0.25);
    EXPECT_DOUBLE_EQ(enumerate_access({1, 1}, 0.5).noncritical, 0.25);
}

TEST(AccessSuccessProbs, DegenerateErasures) {
    // 0^0 = 1: a lone transmitter over a perfect link always gets through.
    EXPECT_DOUBLE_EQ(access_success_probs({1, 0}, 0.0).critical, 1.0);
    EXPECT_DOUBLE_EQ(access_success_probs({2, 0}, 0.0).critical, 0.0);
    EXPECT_DOUBLE_EQ(access_success_probs({0, 1}, 0.0).noncritical, 1.0);
    EXPECT_DOUBLE_EQ(access_success_probs({0, 0}, 0.0).critical, 0.0);
    const auto p = access_success_probs({3, 2}, 1.0);
    EXPECT_EQ(p.critical, 0.0);
    EXPECT_EQ(p.noncritical, 0.0);
}

TEST(BsProbsCollision, Examples) {
    EXPECT_DOUBLE_EQ(bs_probs_collision({1, 0}, 0.2).critical, 0.8);
    EXPECT_DOUBLE_EQ(bs_probs_collision({2, 0}, 0.5).critical, 0.5);
    EXPECT_DOUBLE_EQ(bs_probs_collision({1, 1}, 0.5).noncritical, 0.25);
}

TEST(BsProbsSuperposition, Examples) {
    const std::vector<int> one{2};
    EXPECT_DOUBLE_EQ(bs_probs_superposition(one, {1, 0}, 0.5).critical, 0.75);
    EXPECT_DOUBLE_EQ(bs_probs_superposition_reference(one, {1, 0}, 0.5).critical, 0.75);

    const std::vector<int> two{1, 1};
    EXPECT_DOUBLE_EQ(bs_probs_superposition(two, {2, 0}, 0.5).critical, 0.5);
    EXPECT_DOUBLE_EQ(bs_probs_superposition_reference(two, {2, 0}, 0.5).critical, 0.5);

    const std::vector<int> lone{1};
    EXPECT_DOUBLE_EQ(bs_probs_superposition(lone, {0, 1}, 0.0).noncritical, 1.0);
}

// Random slot loads, erasures and tallies for the property checks below.
struct Gen {
    std::mt19937_64 rng{20240611};

    int count(int hi) { return std::uniform_int_distribution<int>(0, hi)(rng); }
    double erasure() {
        // Mix in the boundary values that exercise 0^0.
        const int pick = count(9);
        if (pick == 0) return 0.0;
        if (pick == 1) return 1.0;
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
    std::vector<int> copies(int messages, int aps) {
        std::vector<int> c(messages, 0);
        int left = aps;
        for (auto& v : c) {
            v = count(left);
            left -= v;
        }
        std::shuffle(c.begin(), c.end(), rng);
        return c;
    }
};

TEST(KernelProperties, ProbabilitiesAreBoundedAndExclusive) {
    Gen g;
    for (int i = 0; i < 2000; ++i) {
        const SlotLoad load{g.count(6), g.count(6)};
        const double e1 = g.erasure(), e2 = g.erasure();
        const auto p = access_success_probs(load, e1);
        EXPECT_GE(p.critical, 0.0);
        EXPECT_GE(p.noncritical, 0.0);
        EXPECT_LE(p.critical + p.noncritical, 1.0 + 1e-15);

        const ApTally tally{g.count(5), g.count(5)};
        const auto q = bs_probs_collision(tally, e2);
        EXPECT_GE(q.critical, 0.0);
        EXPECT_GE(q.noncritical, 0.0);
        EXPECT_LE(q.critical + q.noncritical, 1.0 + 1e-15);

        const auto counts = g.copies(load.total(), 6);
        const auto s = bs_probs_superposition(counts, load, e2);
        EXPECT_GE(s.critical, 0.0);
        EXPECT_GE(s.noncritical, 0.0);
        EXPECT_LE(s.critical + s.noncritical, 1.0 + 1e-12);
    }
}

TEST(KernelProperties, CriticalAccessIgnoresNonCriticalLoad) {
    Gen g;
    for (int i = 0; i < 500; ++i) {
        const int nc = g.count(8);
        const double e = g.erasure();
        const double ref = access_success_probs({nc, 0}, e).critical;
        for (int nb = 1; nb <= 8; ++nb) EXPECT_EQ(access_success_probs({nc, nb}, e).critical, ref);
    }
}

TEST(KernelProperties, MatchesBruteForceEnumeration) {
    for (double e : {0.0, 0.3, 0.5, 1.0}) {
        for (int nc = 0; nc <= 3; ++nc) {
            for (int nb = 0; nb <= 3; ++nb) {
                const auto p = access_success_probs({nc, nb}, e);
                const auto ref = enumerate_access({nc, nb}, e);
                EXPECT_NEAR(p.critical, ref.critical, 1e-12);
                EXPECT_NEAR(p.noncritical, ref.noncritical, 1e-12);
            }
        }
        for (int mc = 0; mc <= 3; ++mc) {
            for (int mb = 0; mb + mc <= 3; ++mb) {
                // Collision tallies: distinct owners, so grouping never helps.
                std::vector<int> owners;
                for (int i = 0; i < mc; ++i) owners.push_back(i);
                for (int i = 0; i < mb; ++i) owners.push_back(3 + i);
                const auto q = bs_probs_collision({mc, mb}, e);
                const auto ref = enumerate_backhaul(owners, 3, e, false);
                EXPECT_NEAR(q.critical, ref.critical, 1e-12);
                EXPECT_NEAR(q.noncritical, ref.noncritical, 1e-12);
            }
        }
    }
}

TEST(KernelProperties, SuperpositionMatchesBruteForceAndReference) {
    Gen g;
    for (int i = 0; i < 400; ++i) {
        const SlotLoad load{g.count(3), g.count(3)};
        const double e = g.erasure();
        const auto counts = g.copies(load.total(), 4);
        const auto fast = bs_probs_superposition(counts, load, e);
        const auto literal = bs_probs_superposition_reference(counts, load, e);
        const auto brute = enumerate_backhaul(owners_from_counts(counts), load.critical, e, true);
        EXPECT_NEAR(fast.critical, literal.critical, 1e-12);
        EXPECT_NEAR(fast.noncritical, literal.noncritical, 1e-12);
        EXPECT_NEAR(fast.critical, brute.critical, 1e-12);
        EXPECT_NEAR(fast.noncritical, brute.noncritical, 1e-12);
    }
}

TEST(KernelProperties, SingleCopiesMatchCollisionModel) {
    // With one AP there is at most one copy in total, so the models coincide.
    for (double e : {0.0, 0.2, 0.7, 1.0}) {
        for (int nc = 0; nc <= 3; ++nc) {
            for (int nb = 0; nb <= 3; ++nb) {
                for (int m = 0; m < nc + nb; ++m) {
                    std::vector<int> counts(nc + nb, 0);
                    counts[m] = 1;
                    const bool critical = m < nc;
                    const auto s = bs_probs_superposition(counts, {nc, nb}, e);
                    const auto c = bs_probs_collision({critical ? 1 : 0, critical ? 0 : 1}, e);
                    EXPECT_NEAR(s.critical, c.critical, 1e-15);
                    EXPECT_NEAR(s.noncritical, c.noncritical, 1e-15);
                }
            }
        }
    }
}

TEST(KernelProperties, SuperpositionMonotoneCollisionNot) {
    for (double e : {0.1, 0.3, 0.5, 0.8}) {
        double prev = 0.0;
        for (int copies = 1; copies <= 8; ++copies) {
            const std::vector<int> counts{copies};
            const double q = bs_probs_superposition(counts, {1, 0}, e).critical;
            EXPECT_NEAR(q, 1.0 - std::pow(e, copies), 1e-15);
            EXPECT_GE(q, prev);
            prev = q;
        }
    }
    for (double e : {0.1, 0.25, 0.5}) {
        for (int aps = 2; aps <= 8; ++aps) {
            EXPECT_LE(bs_probs_collision({aps, 0}, e).critical, bs_probs_collision({1, 0}, e).critical);
        }
    }
}

}  // namespace
}  // namespace gfra
