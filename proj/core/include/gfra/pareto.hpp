#pragma once

#include <span>
#include <vector>

namespace gfra {

/// A (critical, non-critical) throughput pair.
struct RatePoint {
    double critical = 0.0;
    double noncritical = 0.0;

    bool operator==(const RatePoint&) const = default;
};

/// True when `a` is at least `b` in both coordinates.
bool weakly_dominates(const RatePoint& a, const RatePoint& b);

/// Maximal elements under componentwise >=, ordered by critical throughput
/// descending, with exact duplicates collapsed. Empty input gives an empty frontier.
std::vector<RatePoint> pareto_closure(std::span<const RatePoint> points);

/// True when some frontier point weakly dominates `p`.
bool in_dominated_closure(const RatePoint& p, std::span<const RatePoint> frontier);

}  // namespace gfra
