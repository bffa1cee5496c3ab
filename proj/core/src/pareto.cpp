#include "gfra/pareto.hpp"

#include <algorithm>
#include <limits>

namespace gfra {

bool weakly_dominates(const RatePoint& a, const RatePoint& b) {
    return a.critical >= b.critical && a.noncritical >= b.noncritical;
}

std::vector<RatePoint> pareto_closure(std::span<const RatePoint> points) {
    std::vector<RatePoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const RatePoint& a, const RatePoint& b) {
        if (a.critical != b.critical) return a.critical > b.critical;
        return a.noncritical > b.noncritical;
    });

    std::vector<RatePoint> frontier;
    double best_noncritical = -std::numeric_limits<double>::infinity();
    for (const auto& p : sorted) {
        if (p.noncritical > best_noncritical) {
            frontier.push_back(p);
            best_noncritical = p.noncritical;
        }
    }
    return frontier;
}

bool in_dominated_closure(const RatePoint& p, std::span<const RatePoint> frontier) {
    return std::any_of(frontier.begin(), frontier.end(),
                       [&p](const RatePoint& f) { return weakly_dominates(f, p); });
}

}  // namespace gfra
