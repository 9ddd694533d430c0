#pragma once

// Exact first-digit probabilities of a density and the Er criterion.
//
// P(d) is the doubly infinite sum over decades n of the mass of
// [d 10^n, (d+1) 10^n). It is evaluated over a finite window of decades whose
// excluded tail mass is certified by the density, so every probability comes
// with an error bound covering both truncation and quadrature. Er(d) is
// P(d) - log10(1 + 1/d).

#include "benford/densities.hpp"
#include "benford/digit_core.hpp"
#include "benford/quadrature.hpp"

#include <array>
#include <span>
#include <vector>

namespace benford {

inline constexpr double kDefaultThreshold = 0.03;
inline constexpr double kSeriesTolerance = 1e-15;

/// Decades [n_min, n_max] of base m; mass outside [m^n_min, m^(n_max+1)) is
/// at most certified_tail.
struct TruncationWindow {
    int n_min = 0;
    int n_max = 0;
    double certified_tail = 0.0;
};

/// Probabilities of the digits 1..m-1 in base m (entry i is digit i+1).
struct DigitDistribution {
    int base = 10;
    std::vector<Estimate> entries;

    const Estimate& operator[](int digit) const { return entries.at(static_cast<std::size_t>(digit - 1)); }
};

struct ErrorReport {
    std::array<Estimate, 9> er{}; // er[d - 1]
    double max_abs_er = 0.0;
    double tolerance = 0.0;
};

enum class Verdict { conforms, violates };

const char* to_string(Verdict v);

/// Smallest window around the density's median decade whose certified tail
/// is at most tail_budget. Throws tolerance_not_met if the window would leave
/// the representable range.
TruncationWindow truncation_window(const Density& density, int base, double tail_budget);

/// Sum over n of the mass of [a m^n, b m^n). Half the tolerance goes to the
/// truncation, half is spread over the per-decade masses.
Estimate exact_interval_prob(const Density& density, const SignificandInterval& interval,
                             double tol = kDefaultTolerance);

/// As above for a raw range with 1 <= lo <= hi <= base; an empty range
/// [a, a) has probability zero.
Estimate exact_interval_prob(const Density& density, int base, double lo, double hi,
                             double tol = kDefaultTolerance);

/// exact_interval_prob on [d, d+1) in base 10.
Estimate exact_digit_prob(const Density& density, int d, double tol = kDefaultTolerance);

/// All m-1 first-digit probabilities in base m, evaluated in parallel.
DigitDistribution digit_distribution(const Density& density, int base = 10,
                                     double tol = kDefaultTolerance);

/// Er = P(d) - log10(1 + 1/d), with the bound of P(d).
Estimate error_functional(const Density& density, int d, double tol = kDefaultTolerance);

/// Er as the integral of f(x) * delta(x, d), by quadrature of the pointwise
/// pdf on each piece where delta is constant. Shares no code with
/// error_functional beyond the truncation window.
Estimate error_functional_quadrature(const Density& density, int d,
                                     double tol = kDefaultTolerance);

/// Er for all nine digits.
ErrorReport error_report(const Density& density, double tol = kDefaultTolerance);

/// Er of the exponential density with the given rate, summed in closed form
/// over decades until the neglected terms are below tol.
double exponential_er_series(double rate, int d, double tol = kSeriesTolerance);

struct ScanPoint {
    double rate;
    double er;
};

struct ScanResult {
    int digit = 1;
    std::vector<ScanPoint> points;
    double max_abs = 0.0;
};

/// `per_decade` rates 10^(j / per_decade) for j = 0 .. per_decade*(hi-lo)-1,
/// offset by 10^lo: log-spaced over [10^lo, 10^hi).
std::vector<double> log_spaced_grid(int per_decade, int decade_lo = 0, int decade_hi = 1);

ScanResult er_scan(int d, std::span<const double> rates, double tol = kSeriesTolerance);

struct ScaleCheck {
    Estimate original;
    Estimate scaled;
};

/// First-digit probability of X and of a * X.
ScaleCheck scale_invariance_check(const Density& density, double scale, int d,
                                  double tol = kDefaultTolerance);

/// CONFORMS when max |Er| <= threshold.
Verdict conformance_verdict(const ErrorReport& report, double threshold = kDefaultThreshold);

} // namespace benford
