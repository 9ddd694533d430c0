#include "benford/digit_core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string_view>

namespace benford {

namespace {

void require_base(int base) {
    if (base < 2) {
        throw std::domain_error("base must be at least 2, got " + std::to_string(base));
    }
}

void require_positive_finite(double x) {
    if (!std::isfinite(x) || !(x > 0.0)) {
        throw std::domain_error("value must be positive and finite");
    }
}

void require_decimal_digit(int d) {
    if (d < 1 || d > 9) {
        throw std::domain_error("first digit must be in 1..9, got " + std::to_string(d));
    }
}

// Shortest round-trip scientific form of x, split into its decimal digits
// and the power of ten. "3.45e+02" -> digits "345", exponent 2.
struct DecimalForm {
    std::array<char, 32> digits{};
    int count = 0;
    int exponent = 0;
};

DecimalForm decimal_form(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                   std::chars_format::scientific);
    if (ec != std::errc{}) {
        throw std::domain_error("cannot format value");
    }
    DecimalForm form;
    const char* p = buf.data();
    for (; p != end && *p != 'e'; ++p) {
        if (*p != '.') {
            form.digits[static_cast<std::size_t>(form.count++)] = *p;
        }
    }
    ++p; // 'e'
    if (*p == '+') {
        ++p;
    }
    std::from_chars(p, end, form.exponent);
    return form;
}

// m = 2^j for some j >= 1, or 0.
int power_of_two_shift(int base) {
    const auto u = static_cast<unsigned>(base);
    return std::has_single_bit(u) ? std::countr_zero(u) : 0;
}

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

SignificandDecomposition decompose_decimal(double x) {
    // The exponent and leading digit come from the shortest decimal form, so
    // 1e-5 decomposes as (1, -5) although the double is not exactly 10^-5.
    const DecimalForm form = decimal_form(x);
    const int n = form.exponent;
    const long double scaled = n < 0 ? static_cast<long double>(x) * detail::int_pow(10, -n)
                                     : static_cast<long double>(x) / detail::int_pow(10, n);
    const auto lead = static_cast<double>(form.digits[0] - '0');
    double k = static_cast<double>(scaled);
    // Single-digit decimals are exact: "2e-02" is 2 * 10^-2.
    if (k < lead || form.count == 1) {
        k = lead;
    } else if (k >= lead + 1.0) {
        k = std::nextafter(lead + 1.0, 0.0);
    }
    return {k, n};
}

SignificandDecomposition decompose_binary(double x, int shift) {
    int e = 0;
    const double f = std::frexp(x, &e); // x = f * 2^e, f in [0.5, 1)
    const int e2 = e - 1;               // x = (2f) * 2^e2
    const int n = floor_div(e2, shift);
    return {std::ldexp(2.0 * f, e2 - n * shift), n};
}

SignificandDecomposition decompose_generic(double x, int base) {
    int n = static_cast<int>(std::floor(std::log(x) / std::log(static_cast<double>(base))));
    for (int attempt = 0; attempt < 4; ++attempt) {
        const long double p = detail::int_pow(base, n);
        if (static_cast<double>(p) == x) {
            return {1.0, n};
        }
        const long double k = static_cast<long double>(x) / p;
        if (k >= base) {
            ++n;
            continue;
        }
        if (k < 1.0L) {
            --n;
            continue;
        }
        double kd = static_cast<double>(k);
        if (kd >= base) {
            kd = std::nextafter(static_cast<double>(base), 0.0);
        }
        return {kd, n};
    }
    throw std::domain_error("significand normalization did not settle");
}

} // namespace

DigitPattern::DigitPattern(int base, std::vector<int> digits)
    : base_(base), digits_(std::move(digits)) {
    require_base(base_);
    if (digits_.empty()) {
        throw std::domain_error("digit pattern must contain at least one digit");
    }
    if (digits_.front() < 1 || digits_.front() >= base_) {
        throw std::domain_error("first digit must be in 1..base-1");
    }
    for (int d : digits_) {
        if (d < 0 || d >= base_) {
            throw std::domain_error("digit out of range for base " + std::to_string(base_));
        }
    }
}

double DigitPattern::lower_bound() const noexcept {
    double a = 0.0;
    for (int d : digits_) {
        a = a * base_ + d;
    }
    return a;
}

std::string DigitPattern::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i > 0 && base_ > 10) {
            s += ':';
        }
        s += std::to_string(digits_[i]);
    }
    return s;
}

SignificandInterval::SignificandInterval(int base, double lo, double hi)
    : base_(base), lo_(lo), hi_(hi) {
    require_base(base_);
    if (!(lo_ >= 1.0) || !(hi_ > lo_) || !(hi_ <= base_)) {
        throw std::domain_error("significand interval must satisfy 1 <= lo < hi <= base");
    }
}

SignificandInterval SignificandInterval::first_digit(int d) {
    require_decimal_digit(d);
    return {10, static_cast<double>(d), static_cast<double>(d + 1)};
}

double benford_first_digit(int d) {
    require_decimal_digit(d);
    return std::log1p(1.0 / d) / std::numbers::ln10;
}

double benford_pattern_prob(const DigitPattern& pattern) {
    return std::log1p(1.0 / pattern.lower_bound()) / std::log(static_cast<double>(pattern.base()));
}

double benford_interval_prob(const SignificandInterval& interval) {
    const double ratio_minus_one = (interval.hi() - interval.lo()) / interval.lo();
    return std::log1p(ratio_minus_one) / std::log(static_cast<double>(interval.base()));
}

SignificandDecomposition significand_decompose(double x, int base) {
    require_positive_finite(x);
    require_base(base);
    if (base == 10) {
        return decompose_decimal(x);
    }
    if (const int shift = power_of_two_shift(base); shift > 0) {
        return decompose_binary(x, shift);
    }
    return decompose_generic(x, base);
}

std::vector<int> leading_digits(double x, int base, int count) {
    require_positive_finite(x);
    require_base(base);
    if (count < 1) {
        throw std::domain_error("digit count must be at least 1");
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count));
    if (base == 10) {
        const DecimalForm form = decimal_form(x);
        for (int i = 0; i < count; ++i) {
            out.push_back(i < form.count ? form.digits[static_cast<std::size_t>(i)] - '0' : 0);
        }
        return out;
    }
    double k = significand_decompose(x, base).significand;
    for (int i = 0; i < count; ++i) {
        int d = static_cast<int>(std::floor(k));
        d = std::clamp(d, i == 0 ? 1 : 0, base - 1);
        out.push_back(d);
        k = (k - d) * base;
    }
    return out;
}

int digit_indicator(double x, int d, int base) {
    require_base(base);
    if (d < 1 || d >= base) {
        throw std::domain_error("digit out of range for base " + std::to_string(base));
    }
    return leading_digits(x, base, 1).front() == d ? 1 : 0;
}

double delta(double x, int d) {
    require_decimal_digit(d);
    return digit_indicator(x, d) - benford_first_digit(d);
}

std::string format_shortest(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), ec == std::errc{} ? end : buf.data()};
}

namespace detail {

long double int_pow(int base, int n) {
    long double result = 1.0L;
    long double factor = base;
    unsigned e = static_cast<unsigned>(n < 0 ? -static_cast<long long>(n) : n);
    while (e != 0) {
        if (e & 1U) {
            result *= factor;
        }
        factor *= factor;
        e >>= 1U;
    }
    return n < 0 ? 1.0L / result : result;
}

int decade_of(double x, int base) {
    return significand_decompose(x, base).exponent;
}

} // namespace detail

} // namespace benford
