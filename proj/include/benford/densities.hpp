#pragma once

// Probability densities on the positive reals.
//
// A Density answers three questions: the pointwise value f(x), the mass of an
// interval with an error bound, and certified bounds on the mass of the lower
// and upper tails. Builtin densities answer all of them in closed form (error
// bound 0); GenericDensity falls back to adaptive quadrature.
//
// Densities are immutable after construction and may be shared freely across
// threads. Samplers take an explicit seed per call.

#include "benford/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace benford {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDefaultBudget = 1'000'000;

struct Support {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

struct LinearApproximation;

class Density {
public:
    virtual ~Density() = default;

    virtual double pdf(double x) const = 0;

    /// Mass of [lo, hi] for 0 <= lo <= hi (hi may be +inf), with
    /// |value - exact| <= error_bound <= tol.
    virtual Estimate interval_mass(double lo, double hi, double tol = kDefaultTolerance) const;

    /// Upper bound on the mass in (0, x).
    virtual double lower_tail_mass(double x) const = 0;
    /// Upper bound on the mass in (x, inf).
    virtual double upper_tail_mass(double x) const = 0;

    /// Upper bound on the mass outside [1/T, T].
    double tail_mass(double threshold) const;

    /// Closed interval outside which the pdf vanishes.
    virtual Support support() const { return {}; }

    /// Points where the pdf jumps or has a kink. Quadrature splits here.
    virtual std::vector<double> breakpoints() const { return {}; }

    /// A point with roughly half the mass on either side.
    virtual double median() const;

    virtual bool has_sampler() const { return false; }
    /// n independent draws; deterministic for a given seed.
    virtual std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

    /// Density-specific piecewise-linear approximation within L1 distance
    /// eps, if one is known in closed form.
    virtual std::optional<LinearApproximation> linearize(double eps) const;

    virtual std::string describe() const = 0;

protected:
    /// Mass via adaptive quadrature of pdf, split at breakpoints.
    Estimate quadrature_mass(double lo, double hi, double tol) const;
};

/// Densities with an analytic distribution function. interval_mass is exact
/// up to rounding and reports a zero error bound.
class ClosedFormDensity : public Density {
public:
    /// P(X <= x).
    virtual double cdf(double x) const = 0;
    /// P(X > x), evaluated without cancellation where possible.
    virtual double sf(double x) const = 0;

    Estimate interval_mass(double lo, double hi, double tol = kDefaultTolerance) const override;
    double lower_tail_mass(double x) const override { return x <= 0.0 ? 0.0 : cdf(x); }
    double upper_tail_mass(double x) const override { return sf(x); }
    double median() const override;
};

class UniformDensity final : public ClosedFormDensity {
public:
    UniformDensity(double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

    double pdf(double x) const override;
    double cdf(double x) const override;
    double sf(double x) const override;
    Support support() const override { return {lo_, hi_}; }
    std::vector<double> breakpoints() const override { return {lo_, hi_}; }
    bool has_sampler() const override { return true; }
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const override;
    std::optional<LinearApproximation> linearize(double eps) const override;
    std::string describe() const override;

private:
    double lo_;
    double hi_;
};

class ExponentialDensity final : public ClosedFormDensity {
public:
    explicit ExponentialDensity(double rate);

    double rate() const noexcept { return rate_; }

    double pdf(double x) const override;
    double cdf(double x) const override;
    double sf(double x) const override;
    double median() const override;
    bool has_sampler() const override { return true; }
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const override;
    std::string describe() const override;

private:
    double rate_;
};

struct MixtureComponent {
    double weight;
    double rate;
};

/// Finite positive superposition sum_i c_i * t_i * exp(-t_i x).
class ExponentialMixture final : public ClosedFormDensity {
public:
    /// Weights are normalized to sum to one.
    explicit ExponentialMixture(std::vector<MixtureComponent> components);

    const std::vector<MixtureComponent>& components() const noexcept { return components_; }

    double pdf(double x) const override;
    double cdf(double x) const override;
    double sf(double x) const override;
    Estimate interval_mass(double lo, double hi, double tol = kDefaultTolerance) const override;
    bool has_sampler() const override { return true; }
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const override;
    std::string describe() const override;

private:
    std::vector<MixtureComponent> components_;
    std::vector<ExponentialDensity> parts_;
};

/// f(x) = 1 / (x ln 10) on [1, 10): first digits are exactly Benford.
class BenfordExactDensity final : public ClosedFormDensity {
public:
    double pdf(double x) const override;
    double cdf(double x) const override;
    double sf(double x) const override;
    Estimate interval_mass(double lo, double hi, double tol = kDefaultTolerance) const override;
    Support support() const override { return {1.0, 10.0}; }
    std::vector<double> breakpoints() const override { return {1.0, 10.0}; }
    double median() const override;
    bool has_sampler() const override { return true; }
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const override;
    std::string describe() const override;
};

/// Normal(mean, sd) conditioned on x > 0.
class TruncatedNormalDensity final : public ClosedFormDensity {
public:
    TruncatedNormalDensity(double mean, double sd);

    double pdf(double x) const override;
    double cdf(double x) const override;
    double sf(double x) const override;
    Support support() const override { return {0.0, std::numeric_limits<double>::infinity()}; }
    std::vector<double> breakpoints() const override { return {0.0}; }
    /// Rejection from the untruncated normal; offered while the acceptance
    /// probability is at least 1e-3.
    bool has_sampler() const override;
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const override;
    std::string describe() const override;

private:
    double mean_;
    double sd_;
    double positive_mass_; // P(N(mean, sd) > 0)
};

/// Linear interpolation between nodes, zero outside [x_0, x_N].
class PiecewiseLinearDensity final : public ClosedFormDensity {
public:
    /// Nodes strictly increasing and positive, values non-negative with
    /// positive trapezoid mass. Values are rescaled to unit mass.
    PiecewiseLinearDensity(std::vector<double> nodes, std::vector<double> values);

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& values() const noexcept { return values_; }
    /// Trapezoid mass of the values as supplied, before rescaling.
    double raw_mass() const noexcept { return raw_mass_; }

    double pdf(double x) const override;
    double cdf(double x) const override;
    double sf(double x) const override;
    Support support() const override { return {nodes_.front(), nodes_.back()}; }
    std::vector<double> breakpoints() const override { return nodes_; }
    bool has_sampler() const override { return true; }
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const override;
    std::optional<LinearApproximation> linearize(double eps) const override;
    std::string describe() const override;

private:
    std::size_t segment_of(double x) const;
    double mass_within(std::size_t seg, double from, double to) const;

    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> prefix_; // prefix_[i] = mass of [x_0, x_i]
    std::vector<double> suffix_; // suffix_[i] = mass of [x_i, x_N]
    double raw_mass_;
};

/// Histogram density: height h_i on [e_i, e_{i+1}), zero elsewhere.
class PiecewiseConstantDensity final : public ClosedFormDensity {
public:
    /// Heights are rescaled to unit mass.
    PiecewiseConstantDensity(std::vector<double> edges, std::vector<double> heights);

    const std::vector<double>& edges() const noexcept { return edges_; }
    const std::vector<double>& heights() const noexcept { return heights_; }

    double pdf(double x) const override;
    double cdf(double x) const override;
    double sf(double x) const override;
    Support support() const override { return {edges_.front(), edges_.back()}; }
    std::vector<double> breakpoints() const override { return edges_; }
    bool has_sampler() const override { return true; }
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const override;
    std::optional<LinearApproximation> linearize(double eps) const override;
    std::string describe() const override;

private:
    std::vector<double> edges_;
    std::vector<double> heights_;
    std::vector<double> prefix_;
    std::vector<double> suffix_;
};

/// g(x) = f(x / a) / a, the law of a * X.
class ScaledDensity final : public Density {
public:
    ScaledDensity(std::shared_ptr<const Density> base, double scale);

    double pdf(double x) const override;
    Estimate interval_mass(double lo, double hi, double tol = kDefaultTolerance) const override;
    double lower_tail_mass(double x) const override;
    double upper_tail_mass(double x) const override;
    Support support() const override;
    std::vector<double> breakpoints() const override;
    double median() const override { return scale_ * base_->median(); }
    bool has_sampler() const override { return base_->has_sampler(); }
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const override;
    std::string describe() const override;

private:
    std::shared_ptr<const Density> base_;
    double scale_;
};

/// User-supplied pdf on a bounded support [lo, hi]; masses by quadrature.
/// A positive `pdf_max` (an upper bound of the pdf) enables rejection
/// sampling from the uniform envelope.
class GenericDensity final : public Density {
public:
    GenericDensity(std::function<double(double)> pdf, double lo, double hi,
                   double pdf_max = 0.0, std::string name = "generic");

    double pdf(double x) const override;
    double lower_tail_mass(double x) const override;
    double upper_tail_mass(double x) const override;
    Support support() const override { return {lo_, hi_}; }
    std::vector<double> breakpoints() const override { return {lo_, hi_}; }
    bool has_sampler() const override { return pdf_max_ > 0.0; }
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const override;
    std::string describe() const override { return name_; }

private:
    double raw_pdf(double x) const;

    std::function<double(double)> pdf_;
    double lo_;
    double hi_;
    double pdf_max_;
    std::string name_;
    double normalizer_ = 1.0;
};

struct LinearApproximation {
    PiecewiseLinearDensity density;
    /// Certified upper bound on the L1 distance to the source density.
    double l1_bound;
};

UniformDensity make_uniform(double lo, double hi);

/// Throws std::domain_error on empty input, negative weights, all-zero
/// weights or non-positive rates.
ExponentialMixture make_exponential_mixture(std::vector<MixtureComponent> components);

/// Centered ramps of the given width at every jump of a histogram density.
/// The L1 error is exactly width/4 times the summed jump sizes.
LinearApproximation ramp_linearization(std::span<const double> edges,
                                       std::span<const double> heights, double width);

struct ApproximationOptions {
    std::size_t node_budget = 200'000;
};

/// Piecewise-linear h with a certified bound on the L1 distance to f.
/// Uses the density's own linearization when it has one; otherwise refines
/// nodes on the core window [1/T, T] until the segment-wise quadrature of
/// |f - h| plus the tail mass fits in eps. Throws tolerance_not_met when
/// the node budget runs out.
LinearApproximation approximate_piecewise_linear(const Density& f, double eps,
                                                 const ApproximationOptions& opts = {});

/// n draws from the density. Throws unsupported_operation when the density
/// has no sampler.
std::vector<double> sample(const Density& density, std::size_t n, std::uint64_t seed);

/// Two-column "x pdf" text (whitespace or comma separated, '#' comments).
PiecewiseLinearDensity load_tabulated(std::istream& in);

/// "weight rate" per line, same lexical rules as load_tabulated.
ExponentialMixture load_mixture(std::istream& in);

} // namespace benford
