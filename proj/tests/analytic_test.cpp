#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gfra/analytic.hpp"

namespace gfra {
namespace {

SystemConfig make_config(double G, double gamma, int T, int L, double e1, double e2,
                         ReceiverModel model = ReceiverModel::Collision) {
    SystemConfig cfg;
    cfg.total_load = G;
    cfg.critical_fraction = gamma;
    cfg.slots_per_frame = T;
    cfg.num_aps = L;
    cfg.access_erasure = e1;
    cfg.backhaul_erasure = e2;
    cfg.receiver_model = model;
    return cfg;
}

SystemConfig fig4_config(Sharing sharing, ReceiverModel model, int T) {
    auto cfg = make_config(15, 0.5, T, 3, 0.5, 0.5, model);
    cfg.sharing = sharing;
    cfg.tdma_fraction = 0.5;
    return cfg;
}

std::vector<double> poisson_pmf(double mean, int n_max) {
    std::vector<double> pmf(n_max + 1);
    double term = std::exp(-mean);
    for (int k = 0; k <= n_max; ++k) {
        if (k > 0) term *= mean / k;
        pmf[k] = term;
    }
    return pmf;
}

double binomial_pmf(int n, int k, double p) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) *
           std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// Two-slot frame reliability by conditioning on both frame totals and on how
// each service's packets split across the two slots.
ServicePair<double> two_slot_reliability(const SystemConfig& cfg) {
    const int n_max = 40;
    const double crit_frame = cfg.total_load * cfg.critical_fraction;
    const double noncrit_frame = cfg.total_load - crit_frame;
    const auto pc = poisson_pmf(crit_frame, n_max);
    const auto pb = poisson_pmf(noncrit_frame, n_max);

    std::vector<std::vector<ServicePair<double>>> decode(n_max + 1,
                                                         std::vector<ServicePair<double>>(n_max + 1));
    for (int a = 0; a <= n_max; ++a) {
        for (int b = 0; b <= n_max; ++b) decode[a][b] = slot_decode_probs({a, b}, cfg);
    }

    ServicePair<double> sum;
    for (int kc = 0; kc <= n_max; ++kc) {
        for (int kb = 0; kb <= n_max; ++kb) {
            const double w = pc[kc] * pb[kb];
            if (w < 1e-300) continue;
            for (int a = 0; a <= kc; ++a) {
                for (int b = 0; b <= kb; ++b) {
                    const double split = binomial_pmf(kc, a, 0.5) * binomial_pmf(kb, b, 0.5);
                    const auto& s1 = decode[a][b];
                    const auto& s2 = decode[kc - a][kb - b];
                    if (kc > 0) sum.critical += w * split * (s1.critical + s2.critical) / kc;
                    if (kb > 0) sum.noncritical += w * split * (s1.noncritical + s2.noncritical) / kb;
                }
            }
        }
    }
    return {sum.critical / (1.0 - std::exp(-crit_frame)),
            sum.noncritical / (1.0 - std::exp(-noncrit_frame))};
}

TEST(ThroughputCollision, SinglePerfectRelayClosedForm) {
    // G_c = gamma * G / T = 1 per slot.
    const auto r = throughput_collision(make_config(8, 0.5, 4, 1, 0.5, 0.0));
    EXPECT_NEAR(r.critical, 0.5 * std::exp(-0.5), 1e-9);
    EXPECT_NEAR(r.critical, 0.303265, 1e-6);
}

TEST(ThroughputCollision, ZeroCases) {
    auto r = throughput_collision(make_config(16, 0.5, 4, 3, 1.0, 0.5));
    EXPECT_EQ(r.critical, 0.0);
    EXPECT_EQ(r.noncritical, 0.0);
    r = throughput_collision(make_config(16, 0.0, 4, 3, 0.5, 0.5));
    EXPECT_EQ(r.critical, 0.0);
    EXPECT_GT(r.noncritical, 0.0);
    EXPECT_THROW(throughput_collision(make_config(16, 0.5, 4, 3, 0.5, 0.5, ReceiverModel::Superposition)),
                 std::invalid_argument);
}

TEST(ThroughputSuperposition, ZeroCases) {
    const auto r = throughput_superposition(make_config(16, 0.5, 4, 3, 0.5, 1.0, ReceiverModel::Superposition));
    EXPECT_EQ(r.critical, 0.0);
    EXPECT_EQ(r.noncritical, 0.0);
}

TEST(ThroughputSuperposition, SingleApMatchesCollision) {
    for (double gamma : {0.0, 0.3, 0.7, 1.0}) {
        for (double e : {0.0, 0.4, 0.9}) {
            auto cfg = make_config(12, gamma, 4, 1, e, 1.0 - e);
            const auto col = analyze(cfg);
            cfg.receiver_model = ReceiverModel::Superposition;
            const auto sup = analyze(cfg);
            EXPECT_NEAR(col.throughput.critical, sup.throughput.critical, 1e-10);
            EXPECT_NEAR(col.throughput.noncritical, sup.throughput.noncritical, 1e-10);
            ASSERT_EQ(col.reliability.critical.has_value(), sup.reliability.critical.has_value());
            if (col.reliability.critical) {
                EXPECT_NEAR(*col.reliability.critical, *sup.reliability.critical, 1e-10);
            }
            if (col.reliability.noncritical) {
                EXPECT_NEAR(*col.reliability.noncritical, *sup.reliability.noncritical, 1e-10);
            }
        }
    }
}

TEST(ThroughputSuperposition, DominatesCollisionOnGrid) {
    for (double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (double e : {0.1, 0.5, 0.8}) {
            for (int L : {1, 2, 3}) {
                auto cfg = make_config(16, gamma, 4, L, e, e);
                const auto col = throughput_collision(cfg);
                cfg.receiver_model = ReceiverModel::Superposition;
                const auto sup = throughput_superposition(cfg);
                EXPECT_GE(sup.critical, col.critical - 1e-12);
                EXPECT_GE(sup.noncritical, col.noncritical - 1e-12);
            }
        }
    }
}

TEST(Analyze, CriticalMetricsIgnoreNonCriticalLoad) {
    for (auto model : {ReceiverModel::Collision, ReceiverModel::Superposition}) {
        const double crit_frame = 6.0;
        const auto ref = analyze(make_config(crit_frame, 1.0, 4, 3, 0.5, 0.5, model));
        for (double noncrit_frame : {1.0, 6.0, 20.0}) {
            const double G = crit_frame + noncrit_frame;
            const auto m = analyze(make_config(G, crit_frame / G, 4, 3, 0.5, 0.5, model));
            EXPECT_NEAR(m.throughput.critical, ref.throughput.critical, 1e-10);
            EXPECT_NEAR(*m.reliability.critical, *ref.reliability.critical, 1e-10);
        }
    }
}

TEST(Analyze, TruncationConverges) {
    for (auto model : {ReceiverModel::Collision, ReceiverModel::Superposition}) {
        const auto cfg = make_config(16, 0.5, 4, 3, 0.5, 0.5, model);
        for (double tol : {1e-4, 1e-6, 1e-8}) {
            AnalyticOptions coarse, fine;
            coarse.truncation.tail_tolerance = tol;
            fine.truncation.tail_tolerance = tol / 2;
            const auto a = analyze(cfg, coarse);
            const auto b = analyze(cfg, fine);
            EXPECT_LT(std::abs(a.throughput.critical - b.throughput.critical), tol);
            EXPECT_LT(std::abs(a.throughput.noncritical - b.throughput.noncritical), tol);
            EXPECT_LT(std::abs(*a.reliability.critical - *b.reliability.critical), tol);
            EXPECT_LT(std::abs(*a.reliability.noncritical - *b.reliability.noncritical), tol);
        }
    }
}

TEST(Analyze, MetricsStayInRange) {
    for (auto model : {ReceiverModel::Collision, ReceiverModel::Superposition}) {
        for (double G : {0.5, 4.0, 16.0, 32.0}) {
            for (double gamma : {0.1, 0.5, 0.9}) {
                const auto m = analyze(make_config(G, gamma, 4, 3, 0.3, 0.3, model));
                EXPECT_GE(m.throughput.critical, 0.0);
                EXPECT_LE(m.throughput.critical + m.throughput.noncritical, 1.0);
                EXPECT_GE(*m.reliability.critical, 0.0);
                EXPECT_LE(*m.reliability.critical, 1.0);
                EXPECT_GE(*m.reliability.noncritical, 0.0);
                EXPECT_LE(*m.reliability.noncritical, 1.0);
            }
        }
    }
}

TEST(Reliability, SingleSlotClosedForm) {
    for (double lambda : {0.5, 1.0, 3.0}) {
        for (double e1 : {0.2, 0.5, 0.9}) {
            const auto r = reliability_analytic(make_config(lambda, 1.0, 1, 1, e1, 0.0));
            const double expected = (1 - e1) / e1 * std::exp(-lambda) *
                                    (std::exp(lambda * e1) - 1) / (1 - std::exp(-lambda));
            ASSERT_TRUE(r.critical.has_value());
            EXPECT_NEAR(*r.critical, expected, 1e-9);
            EXPECT_FALSE(r.noncritical.has_value());
        }
    }
}

TEST(Reliability, FullAccessErasureGivesZero) {
    const auto r = reliability_analytic(make_config(15, 0.5, 4, 3, 1.0, 0.5));
    EXPECT_EQ(*r.critical, 0.0);
    EXPECT_EQ(*r.noncritical, 0.0);
}

TEST(Reliability, MatchesTwoSlotFrameOracle) {
    for (auto model : {ReceiverModel::Collision, ReceiverModel::Superposition}) {
        for (double e : {0.2, 0.5}) {
            const auto cfg = make_config(5, 0.4, 2, 2, e, e, model);
            const auto r = reliability_analytic(cfg);
            const auto ref = two_slot_reliability(cfg);
            EXPECT_NEAR(*r.critical, ref.critical, 1e-9);
            EXPECT_NEAR(*r.noncritical, ref.noncritical, 1e-9);
        }
    }
}

TEST(Reliability, CriticalIncreasesWithFrameLength) {
    for (auto model : {ReceiverModel::Collision, ReceiverModel::Superposition}) {
        double prev = -1.0;
        for (int T : {2, 4, 8, 16}) {
            const auto r = reliability_analytic(fig4_config(Sharing::NonOrthogonal, model, T));
            EXPECT_GT(*r.critical, prev) << "T=" << T;
            prev = *r.critical;
        }
    }
}

TEST(Tdma, FullCriticalPartitionMatchesNonOrthogonal) {
    auto cfg = make_config(16, 1.0, 4, 3, 0.5, 0.5);
    const auto no = analyze(cfg);
    cfg.sharing = Sharing::Tdma;
    cfg.tdma_fraction = 1.0;
    const auto td = analyze(cfg);
    EXPECT_NEAR(td.throughput.critical, no.throughput.critical, 1e-12);
    EXPECT_NEAR(*td.reliability.critical, *no.reliability.critical, 1e-12);
}

TEST(Tdma, VanishingCriticalPartition) {
    // Light load so the sub-frame load at alpha = 0.001 stays under the truncation cap.
    auto cfg = make_config(0.4, 1.0, 4, 3, 0.5, 0.5);
    cfg.sharing = Sharing::Tdma;
    double prev = 1.0;
    for (double alpha : {0.5, 0.1, 0.01, 0.001}) {
        cfg.tdma_fraction = alpha;
        const double r = tdma_metrics(cfg).metrics.throughput.critical;
        EXPECT_LE(r, alpha);
        EXPECT_LT(r, prev);
        prev = r;
    }
    cfg.tdma_fraction = 0.0;
    const auto starved = tdma_metrics(cfg).metrics;
    EXPECT_EQ(starved.throughput.critical, 0.0);
    EXPECT_EQ(*starved.reliability.critical, 0.0);
}

TEST(Tdma, ReportsSubframeRatesAndNullReliabilityOffGrid) {
    auto cfg = fig4_config(Sharing::Tdma, ReceiverModel::Collision, 4);
    const auto t = tdma_metrics(cfg);
    EXPECT_NEAR(t.metrics.throughput.critical, 0.5 * t.subframe_throughput.critical, 1e-15);
    EXPECT_NEAR(t.metrics.throughput.noncritical, 0.5 * t.subframe_throughput.noncritical, 1e-15);
    EXPECT_TRUE(t.metrics.reliability.critical.has_value());

    cfg.slots_per_frame = 5;
    const auto off = tdma_metrics(cfg);
    EXPECT_FALSE(off.metrics.reliability.critical.has_value());
    EXPECT_FALSE(off.metrics.reliability.noncritical.has_value());
    EXPECT_GT(off.metrics.throughput.critical, 0.0);
}

TEST(Tdma, HelpsNonCriticalService) {
    for (auto model : {ReceiverModel::Collision, ReceiverModel::Superposition}) {
        const auto no = analyze(fig4_config(Sharing::NonOrthogonal, model, 4));
        const auto td = analyze(fig4_config(Sharing::Tdma, model, 4));
        EXPECT_GE(td.throughput.noncritical, no.throughput.noncritical);
    }
}

TEST(SuperpositionMethods, AllThreeAgree) {
    AnalyticOptions product, counts, tuples;
    counts.superposition_method = SuperpositionMethod::CountVectors;
    tuples.superposition_method = SuperpositionMethod::ApStateTuples;
    for (double e : {0.0, 0.3, 0.5, 1.0}) {
        const auto cfg = make_config(8, 0.5, 4, 3, e, 0.7 * e, ReceiverModel::Superposition);
        for (int nc = 0; nc <= 4; ++nc) {
            for (int nb = 0; nb <= 4; ++nb) {
                const auto a = slot_decode_probs({nc, nb}, cfg, product);
                const auto b = slot_decode_probs({nc, nb}, cfg, counts);
                const auto c = slot_decode_probs({nc, nb}, cfg, tuples);
                EXPECT_NEAR(a.critical, b.critical, 1e-12);
                EXPECT_NEAR(a.critical, c.critical, 1e-12);
                EXPECT_NEAR(a.noncritical, b.noncritical, 1e-12);
                EXPECT_NEAR(a.noncritical, c.noncritical, 1e-12);
            }
        }
    }
    const auto cfg = make_config(6, 0.5, 4, 2, 0.4, 0.4, ReceiverModel::Superposition);
    const auto a = throughput_superposition(cfg, product);
    const auto b = throughput_superposition(cfg, counts);
    EXPECT_NEAR(a.critical, b.critical, 1e-12);
    EXPECT_NEAR(a.noncritical, b.noncritical, 1e-12);
}

TEST(SuperpositionMethods, EnumerationBudgetIsEnforced) {
    AnalyticOptions tuples;
    tuples.superposition_method = SuperpositionMethod::ApStateTuples;
    tuples.enumeration_budget = 1000;
    const auto cfg = make_config(8, 0.5, 4, 4, 0.5, 0.5, ReceiverModel::Superposition);
    EXPECT_NO_THROW(slot_decode_probs({2, 2}, cfg, tuples));  // 5^4 = 625
    EXPECT_THROW(slot_decode_probs({3, 2}, cfg, tuples), EnumerationBudgetError);
}

}  // namespace
}  // namespace gfra
