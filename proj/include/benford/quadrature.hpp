#pragma once

#include <cstddef>
#include <functional>

namespace benford {

/// A numerical value together with a bound on its absolute error.
struct Estimate {
    double value = 0.0;
    double error_bound = 0.0;
};

struct QuadratureOptions {
    double tolerance = 1e-10;
    /// Maximum number of integrand evaluations.
    std::size_t budget = 1'000'000;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below `opts.tolerance`. An infinite `hi` is handled with
/// the substitution x = lo + t / (1 - t). Throws tolerance_not_met carrying
/// the achieved bound when the evaluation budget runs out.
Estimate integrate(const std::function<double(double)>& f, double lo, double hi,
                   const QuadratureOptions& opts = {});

} // namespace benford
