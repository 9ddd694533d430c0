#include "benford/empirical.hpp"

#include "benford/errors.hpp"
#include "benford/parallel.hpp"
#include "chi_square_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace benford {

namespace {

constexpr std::size_t kMaxPatterns = 10'000'000;

std::size_t pattern_space(int base, int length) {
    if (base < 2) {
        throw std::domain_error("base must be at least 2");
    }
    if (length < 1) {
        throw std::domain_error("pattern length must be at least 1");
    }
    double size = base - 1;
    for (int i = 1; i < length; ++i) {
        size *= base;
    }
    if (size > static_cast<double>(kMaxPatterns)) {
        throw std::domain_error("too many digit patterns for base " + std::to_string(base) +
                                " and length " + std::to_string(length));
    }
    return static_cast<std::size_t>(size);
}

std::size_t first_index(int base, int length) {
    std::size_t p = 1;
    for (int i = 1; i < length; ++i) {
        p *= static_cast<std::size_t>(base);
    }
    return p;
}

void tally(std::span<const double> values, DigitCounts& out) {
    const std::size_t offset = first_index(out.base, out.length);
    for (double x : values) {
        if (!std::isfinite(x) || !(x > 0.0)) {
            ++out.excluded;
            continue;
        }
        std::size_t a = 0;
        for (int digit : leading_digits(x, out.base, out.length)) {
            a = a * static_cast<std::size_t>(out.base) + static_cast<std::size_t>(digit);
        }
        ++out.counts[a - offset];
        ++out.total;
    }
}

std::vector<double> expected_frequencies(const DigitCounts& counts) {
    std::vector<double> p(counts.pattern_count());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = benford_pattern_prob(counts.pattern(i));
    }
    return p;
}

void require_nonempty(const DigitCounts& counts) {
    if (counts.total == 0) {
        throw empty_dataset("no classifiable values (" + std::to_string(counts.excluded) +
                                " excluded as non-positive or non-finite)",
                            counts.excluded);
    }
}

} // namespace

DigitPattern DigitCounts::pattern(std::size_t index) const {
    std::size_t a = index + first_index(base, length);
    std::vector<int> digits(static_cast<std::size_t>(length));
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        *it = static_cast<int>(a % static_cast<std::size_t>(base));
        a /= static_cast<std::size_t>(base);
    }
    return {base, std::move(digits)};
}

std::size_t DigitCounts::index_of(const DigitPattern& p) const {
    if (p.base() != base || static_cast<int>(p.length()) != length) {
        throw std::domain_error("pattern does not match the counted base and length");
    }
    return static_cast<std::size_t>(p.lower_bound()) - first_index(base, length);
}

DigitCounts count_digits(std::span<const double> values, int base, int length) {
    DigitCounts out;
    out.base = base;
    out.length = length;
    out.counts.assign(pattern_space(base, length), 0);

    constexpr std::size_t kChunk = 1 << 16;
    const std::size_t chunks = (values.size() + kChunk - 1) / kChunk;
    if (chunks <= 1) {
        tally(values, out);
        return out;
    }
    std::vector<DigitCounts> partial(chunks, out);
    parallel_for(chunks, [&](std::size_t c) {
        tally(values.subspan(c * kChunk, std::min(kChunk, values.size() - c * kChunk)),
              partial[c]);
    });
    for (const DigitCounts& part : partial) {
        for (std::size_t i = 0; i < out.counts.size(); ++i) {
            out.counts[i] += part.counts[i];
        }
        out.total += part.total;
        out.excluded += part.excluded;
    }
    return out;
}

ChiSquare chi_square(const DigitCounts& counts) {
    require_nonempty(counts);
    const std::vector<double> p = expected_frequencies(counts);
    const auto n = static_cast<double>(counts.total);
    double statistic = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double expected = n * p[i];
        const double diff = static_cast<double>(counts.counts[i]) - expected;
        statistic += diff * diff / expected;
    }
    return {statistic, static_cast<int>(p.size()) - 1};
}

double mad(const DigitCounts& counts) {
    require_nonempty(counts);
    const std::vector<double> p = expected_frequencies(counts);
    const auto n = static_cast<double>(counts.total);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::abs(static_cast<double>(counts.counts[i]) / n - p[i]);
    }
    return sum / static_cast<double>(p.size());
}

double chi_square_critical(int dof, double alpha) {
    if (dof < 1) {
        throw std::domain_error("degrees of freedom must be positive");
    }
    const bool five = alpha == 0.05;
    const bool one = alpha == 0.01;
    if (!five && !one) {
        throw std::domain_error("critical values are shipped for alpha 0.05 and 0.01 only");
    }
    if (dof <= 99) {
        const auto i = static_cast<std::size_t>(dof - 1);
        return five ? detail::kChiSquare05[i] : detail::kChiSquare01[i];
    }
    const double z = five ? 1.6448536269514722 : 2.3263478740408408;
    const double k = dof;
    const double c = 2.0 / (9.0 * k);
    const double cube = 1.0 - c + z * std::sqrt(c);
    return k * cube * cube * cube;
}

std::array<MonteCarloEstimate, 9> monte_carlo_digit_freqs(const Density& density, std::size_t n,
                                                          std::uint64_t seed) {
    if (n == 0) {
        throw std::domain_error("Monte Carlo sample size must be positive");
    }
    const std::vector<double> draws = sample(density, n, seed);
    const DigitCounts counts = count_digits(draws, 10, 1);
    std::array<MonteCarloEstimate, 9> out{};
    const auto total = static_cast<double>(n);
    for (std::size_t i = 0; i < 9; ++i) {
        const double f = static_cast<double>(counts.counts[i]) / total;
        out[i] = {f, std::sqrt(f * (1.0 - f) / total)};
    }
    return out;
}

MonteCarloEstimate monte_carlo_digit_freq(const Density& density, std::size_t n,
                                          std::uint64_t seed, int d) {
    if (d < 1 || d > 9) {
        throw std::domain_error("first digit must be in 1..9");
    }
    return monte_carlo_digit_freqs(density, n, seed)[static_cast<std::size_t>(d - 1)];
}

ConformanceReport analyze_dataset(std::span<const double> values, int base, int length,
                                  const AnalysisPolicy& policy) {
    ConformanceReport report;
    report.counts = count_digits(values, base, length);
    require_nonempty(report.counts);

    const auto n = static_cast<double>(report.counts.total);
    report.expected = expected_frequencies(report.counts);
    report.observed.reserve(report.counts.pattern_count());
    for (std::uint64_t c : report.counts.counts) {
        report.observed.push_back(static_cast<double>(c) / n);
    }
    report.chi_square = chi_square(report.counts);
    report.mad = mad(report.counts);
    report.alpha = policy.alpha;
    report.critical_value = policy.critical_value
                                ? *policy.critical_value
                                : chi_square_critical(report.chi_square.dof, policy.alpha);

    bool violates = report.chi_square.statistic > report.critical_value;
    if (policy.mad_threshold && report.mad > *policy.mad_threshold) {
        violates = true;
    }
    report.verdict = violates ? Verdict::violates : Verdict::conforms;
    return report;
}

} // namespace benford
