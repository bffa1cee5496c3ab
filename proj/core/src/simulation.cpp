#include "gfra/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace gfra {

namespace {

constexpr std::uint64_t kBlockFrames = 4096;

struct PartialSums {
    std::int64_t decoded_c = 0;
    std::int64_t decoded_c_sq = 0;
    std::int64_t decoded_b = 0;
    std::int64_t decoded_b_sq = 0;
    std::uint64_t included_c = 0;
    std::uint64_t included_b = 0;
    double ratio_c = 0.0;
    double ratio_c_sq = 0.0;
    double ratio_b = 0.0;
    double ratio_b_sq = 0.0;

    void add(const PartialSums& o) {
        decoded_c += o.decoded_c;
        decoded_c_sq += o.decoded_c_sq;
        decoded_b += o.decoded_b;
        decoded_b_sq += o.decoded_b_sq;
        included_c += o.included_c;
        included_b += o.included_b;
        ratio_c += o.ratio_c;
        ratio_c_sq += o.ratio_c_sq;
        ratio_b += o.ratio_b;
        ratio_b_sq += o.ratio_b_sq;
    }
};

struct MessageGroup {
    int copies = 0;
    int first = -1;
    bool distinct = false;

    void add(int message) {
        if (copies++ == 0) {
            first = message;
        } else if (message != first) {
            distinct = true;
        }
    }
};

// Mean and standard error of a sample given its sum and sum of squares.
std::pair<double, double> mean_and_se(long double sum, long double sum_sq, std::uint64_t n) {
    const long double mean = sum / n;
    if (n < 2) return {static_cast<double>(mean), 0.0};
    const long double var = std::max(0.0L, (sum_sq - sum * sum / n) / (n - 1));
    return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / n))};
}

}  // namespace

const StandardErrors& MetricsEstimate::standard_errors() const {
    return std::get<MonteCarloProvenance>(metrics.provenance).standard_errors;
}

BsState simulate_slot(SlotLoad load, const SystemConfig& cfg, Xoshiro256& rng) {
    std::bernoulli_distribution access_survives(1.0 - cfg.access_erasure);
    std::bernoulli_distribution backhaul_survives(1.0 - cfg.backhaul_erasure);
    const int n = load.total();

    MessageGroup critical;
    MessageGroup noncritical;
    for (int ap = 0; ap < cfg.num_aps; ++ap) {
        int critical_rx = 0;
        int noncritical_rx = 0;
        int critical_id = -1;
        int noncritical_id = -1;
        for (int m = 0; m < n; ++m) {
            if (!access_survives(rng)) continue;
            if (m < load.critical) {
                ++critical_rx;
                critical_id = m;
            } else {
                ++noncritical_rx;
                noncritical_id = m;
            }
        }
        const bool relayed = backhaul_survives(rng);
        if (!relayed) continue;
        if (critical_rx == 1) {
            critical.add(critical_id);
        } else if (critical_rx == 0 && noncritical_rx == 1) {
            noncritical.add(noncritical_id);
        }
    }

    const bool superposition = cfg.receiver_model == ReceiverModel::Superposition;
    const auto single = [superposition](const MessageGroup& g) {
        return superposition ? g.copies > 0 && !g.distinct : g.copies == 1;
    };
    if (single(critical)) return {BsState::Kind::CriticalDecoded, critical.first + 1};
    if (critical.copies == 0 && single(noncritical)) {
        return {BsState::Kind::NonCriticalDecoded, noncritical.first + 1};
    }
    return BsState::idle();
}

FrameResult simulate_frame(const SystemConfig& raw, Xoshiro256& rng) {
    const auto cfg = validate_config(raw, ConfigUse::Simulation);
    const int slots = cfg.slots_per_frame;

    const auto draw_count = [&rng](double mean) {
        if (mean <= 0.0) return 0;
        std::poisson_distribution<int> dist(mean);
        return dist(rng);
    };
    FrameResult frame;
    frame.generated.critical = draw_count(cfg.critical_fraction * cfg.total_load);
    frame.generated.noncritical = draw_count((1.0 - cfg.critical_fraction) * cfg.total_load);
    frame.slots.assign(slots, SlotLoad{});

    int critical_begin = 0, critical_end = slots;
    int noncritical_begin = 0, noncritical_end = slots;
    if (cfg.sharing == Sharing::Tdma) {
        const int split = static_cast<int>(std::lround(cfg.critical_partition_slots()));
        critical_end = split;
        noncritical_begin = split;
    }
    if (critical_end > critical_begin) {
        std::uniform_int_distribution<int> pick(critical_begin, critical_end - 1);
        for (int d = 0; d < frame.generated.critical; ++d) ++frame.slots[pick(rng)].critical;
    }
    if (noncritical_end > noncritical_begin) {
        std::uniform_int_distribution<int> pick(noncritical_begin, noncritical_end - 1);
        for (int d = 0; d < frame.generated.noncritical; ++d) ++frame.slots[pick(rng)].noncritical;
    }

    for (const SlotLoad& load : frame.slots) {
        // The relay hop delays delivery by one slot; the decode is credited to the access slot.
        const BsState state = simulate_slot(load, cfg, rng);
        if (state.kind == BsState::Kind::CriticalDecoded) ++frame.decoded.critical;
        if (state.kind == BsState::Kind::NonCriticalDecoded) ++frame.decoded.noncritical;
    }
    return frame;
}

MetricsEstimate estimate_metrics(const SystemConfig& raw, std::uint64_t n_frames, std::uint64_t seed,
                                 const EstimateOptions& options) {
    const auto cfg = validate_config(raw, ConfigUse::Simulation);
    if (n_frames < 1) throw std::invalid_argument("n_frames must be >= 1");

    const std::uint64_t blocks = (n_frames + kBlockFrames - 1) / kBlockFrames;
    std::vector<PartialSums> partial(blocks);
    std::atomic<std::uint64_t> next_block{0};

    const auto worker = [&] {
        for (std::uint64_t b = next_block++; b < blocks; b = next_block++) {
            PartialSums sums;
            const std::uint64_t end = std::min(n_frames, (b + 1) * kBlockFrames);
            for (std::uint64_t i = b * kBlockFrames; i < end; ++i) {
                auto rng = Xoshiro256::for_stream(seed, i);
                const FrameResult f = simulate_frame(cfg, rng);
                sums.decoded_c += f.decoded.critical;
                sums.decoded_c_sq += std::int64_t{f.decoded.critical} * f.decoded.critical;
                sums.decoded_b += f.decoded.noncritical;
                sums.decoded_b_sq += std::int64_t{f.decoded.noncritical} * f.decoded.noncritical;
                if (f.generated.critical > 0) {
                    const double r = static_cast<double>(f.decoded.critical) / f.generated.critical;
                    ++sums.included_c;
                    sums.ratio_c += r;
                    sums.ratio_c_sq += r * r;
                }
                if (f.generated.noncritical > 0) {
                    const double r =
                        static_cast<double>(f.decoded.noncritical) / f.generated.noncritical;
                    ++sums.included_b;
                    sums.ratio_b += r;
                    sums.ratio_b_sq += r * r;
                }
            }
            partial[b] = sums;
        }
    };

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, blocks));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    PartialSums total;
    for (const auto& p : partial) total.add(p);

    MetricsEstimate est;
    est.frames_total = n_frames;
    est.seed = seed;
    est.frames_excluded = {n_frames - total.included_c, n_frames - total.included_b};

    MonteCarloProvenance prov;
    prov.replications = n_frames;
    const double slots = cfg.slots_per_frame;
    {
        auto [mean, se] = mean_and_se(total.decoded_c, total.decoded_c_sq, n_frames);
        est.metrics.throughput.critical = mean / slots;
        prov.standard_errors.throughput.critical = se / slots;
    }
    {
        auto [mean, se] = mean_and_se(total.decoded_b, total.decoded_b_sq, n_frames);
        est.metrics.throughput.noncritical = mean / slots;
        prov.standard_errors.throughput.noncritical = se / slots;
    }
    if (total.included_c > 0) {
        auto [mean, se] = mean_and_se(total.ratio_c, total.ratio_c_sq, total.included_c);
        est.metrics.reliability.critical = mean;
        prov.standard_errors.reliability.critical = se;
    }
    if (total.included_b > 0) {
        auto [mean, se] = mean_and_se(total.ratio_b, total.ratio_b_sq, total.included_b);
        est.metrics.reliability.noncritical = mean;
        prov.standard_errors.reliability.noncritical = se;
    }
    est.metrics.provenance = prov;
    return est;
}

}  // namespace gfra
