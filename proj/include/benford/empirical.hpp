#pragma once

// Leading-digit analysis of observed data: counting, goodness of fit against
// the logarithmic law, and a sampling cross-check for the exact machinery.

#include "benford/conformance.hpp"
#include "benford/densities.hpp"
#include "benford/digit_core.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace benford {

/// Counts per leading-digit pattern of fixed length. Patterns are indexed
/// in increasing order of their significand lower bound a, i.e. index
/// a - base^(length-1).
struct DigitCounts {
    int base = 10;
    int length = 1;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;    // classified values
    std::uint64_t excluded = 0; // non-positive, non-finite

    std::size_t pattern_count() const noexcept { return counts.size(); }
    DigitPattern pattern(std::size_t index) const;
    std::size_t index_of(const DigitPattern& p) const;
    std::uint64_t count(const DigitPattern& p) const { return counts.at(index_of(p)); }
};

struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
};

struct MonteCarloEstimate {
    double frequency = 0.0;
    double std_error = 0.0;
};

/// Verdict rule for datasets: VIOLATES when the chi-square statistic exceeds
/// the critical value at `alpha` (or `critical_value` when given), or when
/// MAD exceeds `mad_threshold` when given.
struct AnalysisPolicy {
    double alpha = 0.01;
    std::optional<double> critical_value;
    std::optional<double> mad_threshold;
};

struct ConformanceReport {
    DigitCounts counts;
    std::vector<double> observed; // frequencies, pattern order
    std::vector<double> expected; // logarithmic-law frequencies
    ChiSquare chi_square;
    double mad = 0.0;
    double alpha = 0.01;
    double critical_value = 0.0;
    Verdict verdict = Verdict::violates;
};

/// Non-positive and non-finite values are tallied as excluded.
DigitCounts count_digits(std::span<const double> values, int base = 10, int length = 1);

/// Pearson statistic against benford_pattern_prob expectations, with
/// dof = patterns - 1. Throws empty_dataset when nothing was classified.
ChiSquare chi_square(const DigitCounts& counts);

/// Mean over patterns of |observed - expected| frequency.
double mad(const DigitCounts& counts);

/// Upper critical value for alpha in {0.05, 0.01}: tabulated for dof <= 99,
/// Wilson-Hilferty beyond.
double chi_square_critical(int dof, double alpha);

/// Fraction of n draws whose first digit is d, with its binomial standard
/// error.
MonteCarloEstimate monte_carlo_digit_freq(const Density& density, std::size_t n,
                                          std::uint64_t seed, int d);

/// All nine first-digit frequencies from one sample.
std::array<MonteCarloEstimate, 9> monte_carlo_digit_freqs(const Density& density, std::size_t n,
                                                          std::uint64_t seed);

ConformanceReport analyze_dataset(std::span<const double> values, int base = 10, int length = 1,
                                  const AnalysisPolicy& policy = {});

} // namespace benford
