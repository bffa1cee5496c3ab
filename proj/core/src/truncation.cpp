#include "gfra/truncation.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace gfra {

TruncationError::TruncationError(double mean, int max_count, double achieved_tail)
    : std::runtime_error("Poisson truncation for mean " + std::to_string(mean) +
                         " needs more than max_count=" + std::to_string(max_count) +
                         " terms (achieved tail mass " + std::to_string(achieved_tail) + ")"),
      achieved_tail_(achieved_tail) {}

double poisson_tail(double mean, int n) {
    if (n < 0) return 1.0;
    if (mean <= 0.0) return 0.0;
    // Pr[X > n] = P(n + 1, mean), the regularized lower incomplete gamma.
    return boost::math::gamma_p(n + 1.0, mean);
}

int poisson_truncation(double mean, double tol, int max_count) {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw std::invalid_argument("tail tolerance must lie in (0,1)");
    }
    if (mean < 0.0 || !std::isfinite(mean)) {
        throw std::invalid_argument("Poisson mean must be finite and >= 0");
    }
    if (mean == 0.0) return 0;
    int n = static_cast<int>(std::floor(mean));
    while (poisson_tail(mean, n) >= tol) {
        if (n >= max_count) {
            throw TruncationError(mean, max_count, poisson_tail(mean, max_count));
        }
        ++n;
    }
    // Walk back in case the tail below the mean already satisfies tol (tiny means).
    while (n > 0 && poisson_tail(mean, n - 1) < tol) --n;
    return n;
}

std::vector<double> truncated_poisson_pmf(double mean, const TruncationPolicy& policy) {
    const int cutoff = poisson_truncation(mean, policy.tail_tolerance, policy.max_count);
    std::vector<double> pmf(cutoff + 1);
    if (mean == 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    const boost::math::poisson_distribution<double> dist(mean);
    for (int n = 0; n <= cutoff; ++n) pmf[n] = boost::math::pdf(dist, n);
    const double mass = std::accumulate(pmf.begin(), pmf.end(), 0.0);
    for (double& p : pmf) p /= mass;
    return pmf;
}

}  // namespace gfra
