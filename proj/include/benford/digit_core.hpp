#pragma once

// Significant-digit arithmetic and the closed-form logarithmic digit laws.
//
// Every classification in this library uses the half-open convention
// x in [d * m^n, (d + 1) * m^n): the lower endpoint belongs to digit d, the
// upper endpoint to the next digit. Base-10 extraction reads the shortest
// round-trip decimal representation of the value, so 1e-5 (which is not
// exactly representable) still has leading digit 1.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace benford {

/// Leading-digit event d1 d2 ... dk in base m.
class DigitPattern {
public:
    /// Throws std::domain_error unless base >= 2, digits is non-empty, the
    /// first digit lies in 1..m-1 and the rest in 0..m-1.
    DigitPattern(int base, std::vector<int> digits);

    int base() const noexcept { return base_; }
    std::size_t length() const noexcept { return digits_.size(); }
    const std::vector<int>& digits() const noexcept { return digits_; }

    /// a = sum d_i * m^(k-i); satisfies m^(k-1) <= a < m^k.
    double lower_bound() const noexcept;

    std::string to_string() const;

    friend bool operator==(const DigitPattern&, const DigitPattern&) = default;

private:
    int base_;
    std::vector<int> digits_;
};

/// Significand range [lo, hi) in base m with 1 <= lo < hi <= m.
class SignificandInterval {
public:
    SignificandInterval(int base, double lo, double hi);

    int base() const noexcept { return base_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

    /// [d, d+1) in base 10.
    static SignificandInterval first_digit(int d);

private:
    int base_;
    double lo_;
    double hi_;
};

/// x = significand * base^exponent with significand in [1, base).
struct SignificandDecomposition {
    double significand;
    int exponent;
};

/// log10(1 + 1/d) for d in 1..9.
double benford_first_digit(int d);

/// log_m(1 + 1/a) where a is the pattern's significand lower bound.
double benford_pattern_prob(const DigitPattern& pattern);

/// log_m(b/a).
double benford_interval_prob(const SignificandInterval& interval);

/// Throws std::domain_error for x <= 0, non-finite x or base < 2.
SignificandDecomposition significand_decompose(double x, int base);

/// First `count` base-m digits of the significand of x.
std::vector<int> leading_digits(double x, int base, int count);

/// 1 iff x lies in [d * m^n, (d+1) * m^n) for some integer n.
int digit_indicator(double x, int d, int base = 10);

/// digit_indicator(x, d) - log10(1 + 1/d).
double delta(double x, int d);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_shortest(double x);

namespace detail {

/// base^n in extended precision by binary powering. Exact whenever the
/// result fits the long double significand.
long double int_pow(int base, int n);

/// Integer log of x in the given base, using the same decomposition as
/// significand_decompose.
int decade_of(double x, int base);

} // namespace detail

} // namespace benford
