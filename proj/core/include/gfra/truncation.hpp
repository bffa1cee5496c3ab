#pragma once

#include <stdexcept>
#include <vector>

namespace gfra {

struct TruncationPolicy {
    double tail_tolerance = 1e-10;  // Poisson mass allowed beyond the cutoff
    int max_count = 200;
};

class TruncationError : public std::runtime_error {
public:
    TruncationError(double mean, int max_count, double achieved_tail);
    double achieved_tail() const noexcept { return achieved_tail_; }

private:
    double achieved_tail_;
};

/// Upper tail Pr[X > n] for X ~ Poisson(mean).
double poisson_tail(double mean, int n);

/// Smallest N with Pr[Poisson(mean) > N] < tol. Throws TruncationError when N
/// would exceed `max_count`.
int poisson_truncation(double mean, double tol, int max_count = TruncationPolicy{}.max_count);

/// Poisson pmf over 0..N(mean), renormalized to unit mass.
std::vector<double> truncated_poisson_pmf(double mean, const TruncationPolicy& policy);

}  // namespace gfra
