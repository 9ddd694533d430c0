#include "benford/conformance.hpp"

#include "benford/errors.hpp"
#include "benford/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace benford {

namespace {

// Neumaier's variant of compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

void require_tolerance(double tol) {
    if (!(tol > 0.0)) {
        throw std::domain_error("tolerance must be positive");
    }
}

void require_digit(int d) {
    if (d < 1 || d > 9) {
        throw std::domain_error("first digit must be in 1..9, got " + std::to_string(d));
    }
}

double power(int base, int n) { return static_cast<double>(detail::int_pow(base, n)); }

// Lower end of decade n scaled by the significand `coefficient`.
double scaled_power(double coefficient, int base, int n) {
    return static_cast<double>(static_cast<long double>(coefficient) * detail::int_pow(base, n));
}

// Quadrature of g over [lo, hi], split at the density's breakpoints.
Estimate integrate_split(const Density& density, const std::function<double(double)>& g,
                         double lo, double hi, double tol) {
    std::vector<double> cuts{lo};
    for (double b : density.breakpoints()) {
        if (b > lo && b < hi) {
            cuts.push_back(b);
        }
    }
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(hi);
    const auto pieces = cuts.size() - 1;
    const QuadratureOptions opts{tol / static_cast<double>(pieces),
                                 std::max<std::size_t>(kDefaultBudget / pieces, 1000)};
    Estimate total;
    for (std::size_t i = 0; i < pieces; ++i) {
        const Estimate part = integrate(g, cuts[i], cuts[i + 1], opts);
        total.value += part.value;
        total.error_bound += part.error_bound;
    }
    return total;
}

} // namespace

const char* to_string(Verdict v) { return v == Verdict::conforms ? "CONFORMS" : "VIOLATES"; }

TruncationWindow truncation_window(const Density& density, int base, double tail_budget) {
    if (base < 2) {
        throw std::domain_error("base must be at least 2");
    }
    require_tolerance(tail_budget);

    double center = density.median();
    if (!(center > 0.0) || !std::isfinite(center)) {
        center = 1.0;
    }
    TruncationWindow w;
    w.n_min = w.n_max = detail::decade_of(center, base);

    auto lower = [&] { return density.lower_tail_mass(power(base, w.n_min)); };
    auto upper = [&] { return density.upper_tail_mass(power(base, w.n_max + 1)); };
    double below = lower();
    double above = upper();

    // Decade exponents beyond which m^n leaves the double range entirely.
    const int limit = static_cast<int>(std::ceil(1100.0 / std::log2(static_cast<double>(base))));
    while (below + above > tail_budget) {
        if (w.n_min < -limit || w.n_max > limit) {
            throw tolerance_not_met("truncation window left the representable range",
                                    below + above);
        }
        if (below >= above) {
            --w.n_min;
            below = lower();
        } else {
            ++w.n_max;
            above = upper();
        }
    }
    w.certified_tail = below + above;
    return w;
}

Estimate exact_interval_prob(const Density& density, const SignificandInterval& interval,
                             double tol) {
    require_tolerance(tol);
    const int base = interval.base();
    const TruncationWindow w = truncation_window(density, base, 0.5 * tol);
    const int decades = w.n_max - w.n_min + 1;
    const double per_decade = 0.5 * tol / decades;

    CompensatedSum sum;
    double error = w.certified_tail;
    for (int n = w.n_min; n <= w.n_max; ++n) {
        const double lo = scaled_power(interval.lo(), base, n);
        const double hi = scaled_power(interval.hi(), base, n);
        const Estimate mass = density.interval_mass(lo, hi, per_decade);
        sum.add(mass.value);
        error += mass.error_bound;
    }
    return {std::clamp(sum.value(), 0.0, 1.0), error};
}

Estimate exact_interval_prob(const Density& density, int base, double lo, double hi,
                             double tol) {
    require_tolerance(tol);
    if (lo == hi && lo >= 1.0 && hi <= base) {
        return {0.0, 0.0};
    }
    return exact_interval_prob(density, SignificandInterval(base, lo, hi), tol);
}

Estimate exact_digit_prob(const Density& density, int d, double tol) {
    return exact_interval_prob(density, SignificandInterval::first_digit(d), tol);
}

DigitDistribution digit_distribution(const Density& density, int base, double tol) {
    require_tolerance(tol);
    DigitDistribution out;
    out.base = base;
    out.entries.resize(static_cast<std::size_t>(base - 1));
    parallel_for(out.entries.size(), [&](std::size_t i) {
        const auto d = static_cast<double>(i + 1);
        out.entries[i] = exact_interval_prob(density, SignificandInterval(base, d, d + 1.0), tol);
    });
    return out;
}

Estimate error_functional(const Density& density, int d, double tol) {
    const Estimate p = exact_digit_prob(density, d, tol);
    return {p.value - benford_first_digit(d), p.error_bound};
}

Estimate error_functional_quadrature(const Density& density, int d, double tol) {
    require_digit(d);
    require_tolerance(tol);
    const TruncationWindow w = truncation_window(density, 10, 0.5 * tol);
    const Support s = density.support();
    const int decades = w.n_max - w.n_min + 1;
    const double per_piece = 0.5 * tol / (9.0 * decades);

    auto integrand = [&density, d](double x) {
        const double fx = density.pdf(x);
        return fx == 0.0 ? 0.0 : fx * delta(x, d);
    };

    CompensatedSum sum;
    double error = w.certified_tail; // |delta| < 1 on the excluded tails
    for (int n = w.n_min; n <= w.n_max; ++n) {
        for (int j = 1; j <= 9; ++j) {
            const double lo = std::max(scaled_power(j, 10, n), s.lo);
            const double hi = std::min(scaled_power(j + 1, 10, n), s.hi);
            if (!(hi > lo)) {
                continue;
            }
            const Estimate part = integrate_split(density, integrand, lo, hi, per_piece);
            sum.add(part.value);
            error += part.error_bound;
        }
    }
    return {sum.value(), error};
}

ErrorReport error_report(const Density& density, double tol) {
    ErrorReport report;
    report.tolerance = tol;
    parallel_for(9, [&](std::size_t i) {
        report.er[i] = error_functional(density, static_cast<int>(i) + 1, tol);
    });
    for (const Estimate& e : report.er) {
        report.max_abs_er = std::max(report.max_abs_er, std::abs(e.value));
    }
    return report;
}

double exponential_er_series(double rate, int d, double tol) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw std::domain_error("exponential rate must be positive and finite");
    }
    require_digit(d);
    require_tolerance(tol);

    // rate = mu * 10^j. Shifting the decade index by j leaves a series that
    // depends on mu alone, so rates one decade apart give identical sums.
    const double mu = significand_decompose(rate, 10).significand;
    auto term = [mu, d](int m) {
        const double y = static_cast<double>(static_cast<long double>(mu) * detail::int_pow(10, m));
        return std::exp(-y * d) * -std::expm1(-y);
    };

    std::vector<double> terms;
    // Upward: the terms decay like exp(-mu d 10^m), far faster than geometric.
    for (int m = 0;; ++m) {
        terms.push_back(term(m));
        const double next_scale =
            static_cast<double>(static_cast<long double>(mu) * detail::int_pow(10, m + 1));
        if (std::exp(-next_scale * d) <= 0.125 * tol) {
            break;
        }
    }
    // Downward: term(m) <= mu 10^m, so everything below m sums to at most
    // mu 10^m / 9.
    for (int m = -1;; --m) {
        terms.push_back(term(m));
        if (mu * std::pow(10.0, m) / 9.0 <= 0.25 * tol) {
            break;
        }
    }
    // Smallest first.
    std::sort(terms.begin(), terms.end());
    CompensatedSum sum;
    for (double t : terms) {
        sum.add(t);
    }
    return sum.value() - benford_first_digit(d);
}

std::vector<double> log_spaced_grid(int per_decade, int decade_lo, int decade_hi) {
    if (per_decade < 1 || decade_hi <= decade_lo) {
        throw std::domain_error("grid needs at least one point per decade and lo < hi");
    }
    const int count = per_decade * (decade_hi - decade_lo);
    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        rates.push_back(std::pow(10.0, decade_lo + static_cast<double>(j) / per_decade));
    }
    return rates;
}

ScanResult er_scan(int d, std::span<const double> rates, double tol) {
    require_digit(d);
    if (rates.empty()) {
        throw std::domain_error("rate grid must not be empty");
    }
    ScanResult out;
    out.digit = d;
    out.points.resize(rates.size());
    parallel_for(rates.size(), [&](std::size_t i) {
        out.points[i] = {rates[i], exponential_er_series(rates[i], d, tol)};
    });
    for (const ScanPoint& p : out.points) {
        out.max_abs = std::max(out.max_abs, std::abs(p.er));
    }
    return out;
}

ScaleCheck scale_invariance_check(const Density& density, double scale, int d, double tol) {
    // Non-owning handle; the scaled view does not outlive this call.
    const std::shared_ptr<const Density> view(std::shared_ptr<const Density>{}, &density);
    const ScaledDensity scaled(view, scale);
    return {exact_digit_prob(density, d, tol), exact_digit_prob(scaled, d, tol)};
}

Verdict conformance_verdict(const ErrorReport& report, double threshold) {
    return report.max_abs_er <= threshold ? Verdict::conforms : Verdict::violates;
}

} // namespace benford
