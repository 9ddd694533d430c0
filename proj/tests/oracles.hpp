#pragma once

// Reference computations that share no code with the library paths they
// check. Test use only.

#include "benford/densities.hpp"

#include <cmath>
#include <functional>

namespace benford::oracle {

/// First-digit probability of Exp(rate) as a direct sum of distribution
/// function differences over decades n in [-40, 10], in extended precision.
inline long double exponential_digit_prob(long double rate, int d) {
    long double sum = 0.0L;
    for (int n = -40; n <= 10; ++n) {
        const long double scale = std::pow(10.0L, n);
        sum += std::exp(-rate * d * scale) - std::exp(-rate * (d + 1) * scale);
    }
    return sum;
}

/// Midpoint rule for the integral of |f - h| over [lo, hi] on a log-spaced
/// grid of `cells` cells.
inline double fine_grid_l1(const std::function<double(double)>& f,
                           const std::function<double(double)>& h, double lo, double hi,
                           int cells) {
    const double ratio = std::pow(hi / lo, 1.0 / cells);
    double sum = 0.0;
    double a = lo;
    for (int i = 0; i < cells; ++i) {
        const double b = (i + 1 == cells) ? hi : a * ratio;
        const double mid = 0.5 * (a + b);
        sum += std::abs(f(mid) - h(mid)) * (b - a);
        a = b;
    }
    return sum;
}

/// Same on a uniform grid, for bounded supports with jumps.
inline double fine_grid_l1_linear(const std::function<double(double)>& f,
                                  const std::function<double(double)>& h, double lo, double hi,
                                  int cells) {
    const double width = (hi - lo) / cells;
    double sum = 0.0;
    for (int i = 0; i < cells; ++i) {
        const double mid = lo + (i + 0.5) * width;
        sum += std::abs(f(mid) - h(mid)) * width;
    }
    return sum;
}

/// Pearson statistic evaluated straight from its definition.
inline double pearson(const double* observed, const double* p, int k, double n) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
        const double e = n * p[i];
        s += (observed[i] - e) * (observed[i] - e) / e;
    }
    return s;
}

} // namespace benford::oracle
