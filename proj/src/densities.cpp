#include "benford/densities.hpp"

#include "benford/errors.hpp"
#include "benford/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

namespace benford {

namespace {

void check_interval(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo < 0.0 || hi < lo) {
        throw std::domain_error("interval must satisfy 0 <= lo <= hi");
    }
}

void check_tolerance(double tol) {
    if (!(tol > 0.0)) {
        throw std::domain_error("tolerance must be positive");
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

double std_normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

// Upper bound of the largest prefix entry <= target, as a segment index.
std::size_t locate(const std::vector<double>& prefix, double target) {
    auto it = std::upper_bound(prefix.begin(), prefix.end(), target);
    auto idx = static_cast<std::size_t>(std::distance(prefix.begin(), it));
    idx = idx == 0 ? 0 : idx - 1;
    return std::min(idx, prefix.size() - 2);
}

void check_strictly_increasing_positive(const std::vector<double>& xs, const char* what) {
    if (xs.size() < 2) {
        throw std::domain_error(std::string(what) + " need at least two entries");
    }
    if (!(xs.front() > 0.0) || !std::isfinite(xs.back())) {
        throw std::domain_error(std::string(what) + " must be positive and finite");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) {
            throw std::domain_error(std::string(what) + " must be strictly increasing");
        }
    }
}

void check_non_negative(const std::vector<double>& ys, const char* what) {
    for (double y : ys) {
        if (!std::isfinite(y) || y < 0.0) {
            throw std::domain_error(std::string(what) + " must be finite and non-negative");
        }
    }
}

std::vector<std::vector<double>> read_columns(std::istream& in, std::size_t columns) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::vector<double> row;
        std::string token;
        while (fields >> token) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc{} || ptr != token.data() + token.size()) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": not a number: '" + token + "'");
            }
            row.push_back(v);
        }
        if (row.empty()) {
            continue;
        }
        if (row.size() != columns) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(columns) + " columns");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

// ---------------------------------------------------------------------------
// Density

Estimate Density::interval_mass(double lo, double hi, double tol) const {
    check_interval(lo, hi);
    check_tolerance(tol);
    const Support s = support();
    lo = std::max(lo, s.lo);
    hi = std::min(hi, s.hi);
    if (!(hi > lo)) {
        return {0.0, 0.0};
    }
    return quadrature_mass(lo, hi, tol);
}

Estimate Density::quadrature_mass(double lo, double hi, double tol) const {
    std::vector<double> cuts{lo};
    for (double b : breakpoints()) {
        if (b > lo && b < hi) {
            cuts.push_back(b);
        }
    }
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(hi);

    const auto pieces = static_cast<double>(cuts.size() - 1);
    QuadratureOptions opts{tol / pieces,
                           kDefaultBudget / static_cast<std::size_t>(pieces)};
    auto f = [this](double x) { return pdf(x); };
    Estimate total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Estimate part = integrate(f, cuts[i], cuts[i + 1], opts);
        total.value += part.value;
        total.error_bound += part.error_bound;
    }
    total.value = std::max(total.value, 0.0);
    return total;
}

double Density::tail_mass(double threshold) const {
    if (!(threshold >= 1.0)) {
        return 1.0;
    }
    return std::min(1.0, lower_tail_mass(1.0 / threshold) + upper_tail_mass(threshold));
}

double Density::median() const {
    const Support s = support();
    double lo = s.lo > 0.0 ? s.lo : 1e-300;
    double hi = std::isfinite(s.hi) ? s.hi : 1e300;
    const bool geometric = hi / lo > 4.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = geometric ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        (lower_tail_mass(mid) < 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> Density::sample(std::size_t, std::uint64_t) const {
    throw unsupported_operation("density '" + describe() + "' has no sampler");
}

std::optional<LinearApproximation> Density::linearize(double) const { return std::nullopt; }

// ---------------------------------------------------------------------------
// ClosedFormDensity

Estimate ClosedFormDensity::interval_mass(double lo, double hi, double tol) const {
    check_interval(lo, hi);
    check_tolerance(tol);
    if (hi == lo) {
        return {0.0, 0.0};
    }
    // Difference the side of the distribution that is small, where the
    // complementary function has full relative precision.
    const double below = cdf(lo);
    const double mass = below < 0.5 ? cdf(hi) - below : sf(lo) - sf(hi);
    return {std::max(mass, 0.0), 0.0};
}

double ClosedFormDensity::median() const {
    const Support s = support();
    double lo = s.lo > 0.0 ? s.lo : 1e-300;
    double hi = std::isfinite(s.hi) ? s.hi : 1e300;
    for (int i = 0; i < 400; ++i) {
        const double mid = hi / lo > 4.0 ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        (cdf(mid) < 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Uniform

UniformDensity::UniformDensity(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
        throw std::domain_error("uniform density needs 0 < lo < hi");
    }
}

double UniformDensity::pdf(double x) const {
    return (x >= lo_ && x < hi_) ? 1.0 / (hi_ - lo_) : 0.0;
}

double UniformDensity::cdf(double x) const {
    return std::clamp((x - lo_) / (hi_ - lo_), 0.0, 1.0);
}

double UniformDensity::sf(double x) const {
    return std::clamp((hi_ - x) / (hi_ - lo_), 0.0, 1.0);
}

std::vector<double> UniformDensity::sample(std::size_t n, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<double> out(n);
    for (double& x : out) {
        x = lo_ + (hi_ - lo_) * rng.uniform01();
        if (x >= hi_) {
            x = std::nextafter(hi_, lo_);
        }
    }
    return out;
}

std::optional<LinearApproximation> UniformDensity::linearize(double eps) const {
    const std::vector<double> edges{lo_, hi_};
    const std::vector<double> heights{1.0 / (hi_ - lo_)};
    // Jumps sum to 2/(hi-lo); width w gives error w / (2 (hi - lo)).
    const double width = std::min({eps * (hi_ - lo_), 0.5 * (hi_ - lo_), lo_});
    return ramp_linearization(edges, heights, width);
}

std::string UniformDensity::describe() const {
    return "uniform:lo=" + fmt(lo_) + ",hi=" + fmt(hi_);
}

UniformDensity make_uniform(double lo, double hi) { return {lo, hi}; }

// ---------------------------------------------------------------------------
// Exponential

ExponentialDensity::ExponentialDensity(double rate) : rate_(rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw std::domain_error("exponential rate must be positive and finite");
    }
}

double ExponentialDensity::pdf(double x) const {
    return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x);
}

double ExponentialDensity::cdf(double x) const {
    return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
}

double ExponentialDensity::sf(double x) const {
    return x <= 0.0 ? 1.0 : std::exp(-rate_ * x);
}

double ExponentialDensity::median() const { return std::numbers::ln2 / rate_; }

std::vector<double> ExponentialDensity::sample(std::size_t n, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<double> out(n);
    for (double& x : out) {
        x = -std::log(rng.uniform01()) / rate_;
    }
    return out;
}

std::string ExponentialDensity::describe() const { return "exponential:rate=" + fmt(rate_); }

// ---------------------------------------------------------------------------
// ExponentialMixture

ExponentialMixture::ExponentialMixture(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw std::domain_error("mixture needs at least one component");
    }
    double total = 0.0;
    for (const auto& c : components_) {
        if (!std::isfinite(c.weight) || c.weight < 0.0) {
            throw std::domain_error("mixture weights must be non-negative");
        }
        total += c.weight;
    }
    if (!(total > 0.0)) {
        throw std::domain_error("mixture weights must not all be zero");
    }
    parts_.reserve(components_.size());
    for (auto& c : components_) {
        c.weight /= total;
        parts_.emplace_back(c.rate);
    }
}

double ExponentialMixture::pdf(double x) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        sum += components_[i].weight * parts_[i].pdf(x);
    }
    return sum;
}

double ExponentialMixture::cdf(double x) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        sum += components_[i].weight * parts_[i].cdf(x);
    }
    return sum;
}

double ExponentialMixture::sf(double x) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        sum += components_[i].weight * parts_[i].sf(x);
    }
    return sum;
}

Estimate ExponentialMixture::interval_mass(double lo, double hi, double tol) const {
    check_interval(lo, hi);
    check_tolerance(tol);
    double sum = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        sum += components_[i].weight * parts_[i].interval_mass(lo, hi, tol).value;
    }
    return {sum, 0.0};
}

std::vector<double> ExponentialMixture::sample(std::size_t n, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<double> cumulative;
    cumulative.reserve(components_.size());
    double acc = 0.0;
    for (const auto& c : components_) {
        acc += c.weight;
        cumulative.push_back(acc);
    }
    std::vector<double> out(n);
    for (double& x : out) {
        const double pick = rng.uniform01() * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
        const auto idx = std::min(static_cast<std::size_t>(it - cumulative.begin()),
                                  components_.size() - 1);
        x = -std::log(rng.uniform01()) / components_[idx].rate;
    }
    return out;
}

std::string ExponentialMixture::describe() const {
    std::string s = "mixture:";
    for (std::size_t i = 0; i < components_.size(); ++i) {
        s += (i ? ";" : "") + fmt(components_[i].weight) + "@" + fmt(components_[i].rate);
    }
    return s;
}

ExponentialMixture make_exponential_mixture(std::vector<MixtureComponent> components) {
    return ExponentialMixture(std::move(components));
}

// ---------------------------------------------------------------------------
// BenfordExact

double BenfordExactDensity::pdf(double x) const {
    return (x >= 1.0 && x < 10.0) ? 1.0 / (x * std::numbers::ln10) : 0.0;
}

double BenfordExactDensity::cdf(double x) const {
    return x < 1.0 ? 0.0 : (x >= 10.0 ? 1.0 : std::log10(x));
}

double BenfordExactDensity::sf(double x) const {
    return x < 1.0 ? 1.0 : (x >= 10.0 ? 0.0 : std::log10(10.0 / x));
}

Estimate BenfordExactDensity::interval_mass(double lo, double hi, double tol) const {
    check_interval(lo, hi);
    check_tolerance(tol);
    lo = std::max(lo, 1.0);
    hi = std::min(hi, 10.0);
    if (!(hi > lo)) {
        return {0.0, 0.0};
    }
    return {std::log10(hi) - std::log10(lo), 0.0};
}

double BenfordExactDensity::median() const { return std::sqrt(10.0); }

std::vector<double> BenfordExactDensity::sample(std::size_t n, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<double> out(n);
    for (double& x : out) {
        x = std::pow(10.0, rng.uniform01());
        if (x >= 10.0) {
            x = std::nextafter(10.0, 1.0);
        }
    }
    return out;
}

std::string BenfordExactDensity::describe() const { return "benford-exact"; }

// ---------------------------------------------------------------------------
// TruncatedNormal

TruncatedNormalDensity::TruncatedNormalDensity(double mean, double sd) : mean_(mean), sd_(sd) {
    if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd)) {
        throw std::domain_error("truncated normal needs finite mean and positive sd");
    }
    positive_mass_ = std_normal_sf(-mean_ / sd_);
    if (!(positive_mass_ > 0.0)) {
        throw std::domain_error("normal has no mass on the positive reals");
    }
}

double TruncatedNormalDensity::pdf(double x) const {
    if (x <= 0.0) {
        return 0.0;
    }
    const double z = (x - mean_) / sd_;
    return std::exp(-0.5 * z * z) / (sd_ * std::sqrt(2.0 * std::numbers::pi) * positive_mass_);
}

double TruncatedNormalDensity::cdf(double x) const {
    if (x <= 0.0) {
        return 0.0;
    }
    // P(0 < N <= x) = sf(0) - sf(x) on the untruncated normal.
    return (positive_mass_ - std_normal_sf((x - mean_) / sd_)) / positive_mass_;
}

double TruncatedNormalDensity::sf(double x) const {
    if (x <= 0.0) {
        return 1.0;
    }
    return std_normal_sf((x - mean_) / sd_) / positive_mass_;
}

bool TruncatedNormalDensity::has_sampler() const { return positive_mass_ >= 1e-3; }

std::vector<double> TruncatedNormalDensity::sample(std::size_t n, std::uint64_t seed) const {
    if (!has_sampler()) {
        return Density::sample(n, seed);
    }
    Rng rng(seed);
    std::vector<double> out(n);
    for (double& x : out) {
        do {
            x = mean_ + sd_ * rng.normal();
        } while (!(x > 0.0));
    }
    return out;
}

std::string TruncatedNormalDensity::describe() const {
    return "truncated-normal:mean=" + fmt(mean_) + ",sd=" + fmt(sd_);
}

// ---------------------------------------------------------------------------
// PiecewiseLinear

PiecewiseLinearDensity::PiecewiseLinearDensity(std::vector<double> nodes,
                                               std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
    check_strictly_increasing_positive(nodes_, "piecewise-linear nodes");
    if (values_.size() != nodes_.size()) {
        throw std::domain_error("piecewise-linear density needs one value per node");
    }
    check_non_negative(values_, "piecewise-linear values");

    raw_mass_ = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        raw_mass_ += 0.5 * (nodes_[i + 1] - nodes_[i]) * (values_[i] + values_[i + 1]);
    }
    if (!(raw_mass_ > 0.0) || !std::isfinite(raw_mass_)) {
        throw std::domain_error("piecewise-linear density has no mass");
    }
    for (double& v : values_) {
        v /= raw_mass_;
    }

    const std::size_t n = nodes_.size();
    prefix_.assign(n, 0.0);
    suffix_.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        prefix_[i] = prefix_[i - 1] + mass_within(i - 1, nodes_[i - 1], nodes_[i]);
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        suffix_[i] = suffix_[i + 1] + mass_within(i, nodes_[i], nodes_[i + 1]);
    }
}

std::size_t PiecewiseLinearDensity::segment_of(double x) const { return locate(nodes_, x); }

double PiecewiseLinearDensity::mass_within(std::size_t seg, double from, double to) const {
    const double x0 = nodes_[seg];
    const double x1 = nodes_[seg + 1];
    const double slope = (values_[seg + 1] - values_[seg]) / (x1 - x0);
    const double va = values_[seg] + slope * (from - x0);
    const double vb = values_[seg] + slope * (to - x0);
    return 0.5 * (to - from) * (va + vb);
}

double PiecewiseLinearDensity::pdf(double x) const {
    if (x < nodes_.front() || x > nodes_.back()) {
        return 0.0;
    }
    const std::size_t i = segment_of(x);
    const double t = (x - nodes_[i]) / (nodes_[i + 1] - nodes_[i]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

double PiecewiseLinearDensity::cdf(double x) const {
    if (x <= nodes_.front()) {
        return 0.0;
    }
    if (x >= nodes_.back()) {
        return prefix_.back();
    }
    const std::size_t i = segment_of(x);
    return prefix_[i] + mass_within(i, nodes_[i], x);
}

double PiecewiseLinearDensity::sf(double x) const {
    if (x <= nodes_.front()) {
        return suffix_.front();
    }
    if (x >= nodes_.back()) {
        return 0.0;
    }
    const std::size_t i = segment_of(x);
    return suffix_[i + 1] + mass_within(i, x, nodes_[i + 1]);
}

std::vector<double> PiecewiseLinearDensity::sample(std::size_t n, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<double> out(n);
    const double total = prefix_.back();
    for (double& x : out) {
        const double target = rng.uniform01() * total;
        const std::size_t i = locate(prefix_, target);
        const double r = target - prefix_[i];
        const double width = nodes_[i + 1] - nodes_[i];
        const double v0 = values_[i];
        const double slope = (values_[i + 1] - v0) / width;
        // Solve v0 t + slope t^2 / 2 = r in the cancellation-free form.
        const double disc = std::max(v0 * v0 + 2.0 * slope * r, 0.0);
        const double denom = v0 + std::sqrt(disc);
        double t = denom > 0.0 ? 2.0 * r / denom : 0.0;
        t = std::clamp(t, 0.0, width);
        x = std::min(nodes_[i] + t, nodes_[i + 1]);
    }
    return out;
}

std::optional<LinearApproximation> PiecewiseLinearDensity::linearize(double) const {
    return LinearApproximation{*this, 0.0};
}

std::string PiecewiseLinearDensity::describe() const {
    return "piecewise-linear(" + std::to_string(nodes_.size()) + " nodes on [" +
           fmt(nodes_.front()) + ", " + fmt(nodes_.back()) + "])";
}

// ---------------------------------------------------------------------------
// PiecewiseConstant

PiecewiseConstantDensity::PiecewiseConstantDensity(std::vector<double> edges,
                                                   std::vector<double> heights)
    : edges_(std::move(edges)), heights_(std::move(heights)) {
    check_strictly_increasing_positive(edges_, "histogram edges");
    if (heights_.size() + 1 != edges_.size()) {
        throw std::domain_error("histogram needs one height per bin");
    }
    check_non_negative(heights_, "histogram heights");
    double mass = 0.0;
    for (std::size_t i = 0; i < heights_.size(); ++i) {
        mass += heights_[i] * (edges_[i + 1] - edges_[i]);
    }
    if (!(mass > 0.0)) {
        throw std::domain_error("histogram has no mass");
    }
    for (double& h : heights_) {
        h /= mass;
    }
    const std::size_t n = edges_.size();
    prefix_.assign(n, 0.0);
    suffix_.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        prefix_[i] = prefix_[i - 1] + heights_[i - 1] * (edges_[i] - edges_[i - 1]);
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        suffix_[i] = suffix_[i + 1] + heights_[i] * (edges_[i + 1] - edges_[i]);
    }
}

double PiecewiseConstantDensity::pdf(double x) const {
    if (x < edges_.front() || x >= edges_.back()) {
        return 0.0;
    }
    return heights_[locate(edges_, x)];
}

double PiecewiseConstantDensity::cdf(double x) const {
    if (x <= edges_.front()) {
        return 0.0;
    }
    if (x >= edges_.back()) {
        return prefix_.back();
    }
    const std::size_t i = locate(edges_, x);
    return prefix_[i] + heights_[i] * (x - edges_[i]);
}

double PiecewiseConstantDensity::sf(double x) const {
    if (x <= edges_.front()) {
        return suffix_.front();
    }
    if (x >= edges_.back()) {
        return 0.0;
    }
    const std::size_t i = locate(edges_, x);
    return suffix_[i + 1] + heights_[i] * (edges_[i + 1] - x);
}

std::vector<double> PiecewiseConstantDensity::sample(std::size_t n, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<double> out(n);
    const double total = prefix_.back();
    for (double& x : out) {
        const double target = rng.uniform01() * total;
        std::size_t i = locate(prefix_, target);
        while (heights_[i] == 0.0 && i + 1 < heights_.size()) {
            ++i;
        }
        const double t = heights_[i] > 0.0 ? (target - prefix_[i]) / heights_[i] : 0.0;
        x = edges_[i] + std::clamp(t, 0.0, edges_[i + 1] - edges_[i]);
        if (x >= edges_[i + 1]) {
            x = std::nextafter(edges_[i + 1], edges_[i]);
        }
    }
    return out;
}

std::optional<LinearApproximation> PiecewiseConstantDensity::linearize(double eps) const {
    double jumps = 0.0;
    double narrowest = edges_.back() - edges_.front();
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const double left = i > 0 ? heights_[i - 1] : 0.0;
        const double right = i < heights_.size() ? heights_[i] : 0.0;
        jumps += std::abs(right - left);
        if (i + 1 < edges_.size()) {
            narrowest = std::min(narrowest, edges_[i + 1] - edges_[i]);
        }
    }
    // Error is width * jumps / 4; keep it at most eps / 2.
    const double width = std::min({eps, 2.0 * eps / jumps, 0.5 * narrowest, edges_.front()});
    return ramp_linearization(edges_, heights_, width);
}

std::string PiecewiseConstantDensity::describe() const {
    return "histogram(" + std::to_string(heights_.size()) + " bins on [" + fmt(edges_.front()) +
           ", " + fmt(edges_.back()) + "])";
}

LinearApproximation ramp_linearization(std::span<const double> edges,
                                       std::span<const double> heights, double width) {
    if (edges.size() < 2 || heights.size() + 1 != edges.size()) {
        throw std::domain_error("histogram needs one height per bin");
    }
    if (!(width > 0.0) || !(0.5 * width < edges.front())) {
        throw std::domain_error("ramp width must be positive and keep nodes positive");
    }
    double source_mass = 0.0;
    for (std::size_t i = 0; i < heights.size(); ++i) {
        if (!(edges[i + 1] - edges[i] > width)) {
            throw std::domain_error("ramp width must be narrower than every bin");
        }
        source_mass += heights[i] * (edges[i + 1] - edges[i]);
    }
    if (std::abs(source_mass - 1.0) > 1e-9) {
        throw std::domain_error("histogram heights must describe unit mass");
    }

    std::vector<double> nodes;
    std::vector<double> values;
    double jumps = 0.0;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const double left = i > 0 ? heights[i - 1] : 0.0;
        const double right = i < heights.size() ? heights[i] : 0.0;
        jumps += std::abs(right - left);
        nodes.push_back(edges[i] - half);
        values.push_back(left);
        nodes.push_back(edges[i] + half);
        values.push_back(right);
    }
    PiecewiseLinearDensity h(std::move(nodes), std::move(values));
    // Each centered ramp trades two triangles of area width * jump / 8.
    // Rescaling h to unit mass moves it by |raw_mass - 1| in L1.
    const double bound = 0.25 * width * jumps + std::abs(h.raw_mass() - 1.0);
    return {std::move(h), bound};
}

// ---------------------------------------------------------------------------
// Scaled

ScaledDensity::ScaledDensity(std::shared_ptr<const Density> base, double scale)
    : base_(std::move(base)), scale_(scale) {
    if (!base_) {
        throw std::domain_error("scaled density needs a base density");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::domain_error("scale must be positive and finite");
    }
}

double ScaledDensity::pdf(double x) const { return base_->pdf(x / scale_) / scale_; }

Estimate ScaledDensity::interval_mass(double lo, double hi, double tol) const {
    check_interval(lo, hi);
    return base_->interval_mass(lo / scale_, hi / scale_, tol);
}

double ScaledDensity::lower_tail_mass(double x) const {
    return base_->lower_tail_mass(x / scale_);
}

double ScaledDensity::upper_tail_mass(double x) const {
    return base_->upper_tail_mass(x / scale_);
}

Support ScaledDensity::support() const {
    const Support s = base_->support();
    return {s.lo * scale_, s.hi * scale_};
}

std::vector<double> ScaledDensity::breakpoints() const {
    std::vector<double> out = base_->breakpoints();
    for (double& b : out) {
        b *= scale_;
    }
    return out;
}

std::vector<double> ScaledDensity::sample(std::size_t n, std::uint64_t seed) const {
    std::vector<double> out = base_->sample(n, seed);
    for (double& x : out) {
        x *= scale_;
    }
    return out;
}

std::string ScaledDensity::describe() const {
    return "scaled(" + fmt(scale_) + ", " + base_->describe() + ")";
}

// ---------------------------------------------------------------------------
// Generic

GenericDensity::GenericDensity(std::function<double(double)> pdf, double lo, double hi,
                               double pdf_max, std::string name)
    : pdf_(std::move(pdf)), lo_(lo), hi_(hi), pdf_max_(pdf_max), name_(std::move(name)) {
    if (!pdf_) {
        throw std::domain_error("generic density needs a pdf");
    }
    if (!(lo >= 0.0) || !(hi > lo) || !std::isfinite(hi)) {
        throw std::domain_error("generic density needs a bounded support 0 <= lo < hi");
    }
    const Estimate mass = quadrature_mass(lo_, hi_, 1e-13);
    if (!(mass.value > 0.0)) {
        throw std::domain_error("generic density has no mass");
    }
    normalizer_ = 1.0 / mass.value;
}

double GenericDensity::raw_pdf(double x) const {
    if (x < lo_ || x > hi_) {
        return 0.0;
    }
    const double y = pdf_(x);
    if (!std::isfinite(y) || y < 0.0) {
        throw std::domain_error("pdf must be finite and non-negative on its support");
    }
    return y;
}

double GenericDensity::pdf(double x) const { return normalizer_ * raw_pdf(x); }

double GenericDensity::lower_tail_mass(double x) const {
    if (x <= lo_) {
        return 0.0;
    }
    const Estimate m = quadrature_mass(lo_, std::min(x, hi_), kDefaultTolerance);
    return std::min(1.0, m.value + m.error_bound);
}

double GenericDensity::upper_tail_mass(double x) const {
    if (x >= hi_) {
        return 0.0;
    }
    const Estimate m = quadrature_mass(std::max(x, lo_), hi_, kDefaultTolerance);
    return std::min(1.0, m.value + m.error_bound);
}

std::vector<double> GenericDensity::sample(std::size_t n, std::uint64_t seed) const {
    if (!has_sampler()) {
        return Density::sample(n, seed);
    }
    Rng rng(seed);
    std::vector<double> out(n);
    for (double& x : out) {
        for (;;) {
            const double candidate = lo_ + (hi_ - lo_) * rng.uniform01();
            const double height = raw_pdf(candidate);
            if (height > pdf_max_) {
                throw std::domain_error("pdf exceeds the declared sampling envelope");
            }
            if (rng.uniform01() * pdf_max_ <= height) {
                x = candidate;
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Approximation by refinement

namespace {

struct Piece {
    double lo;
    double hi;
    double bound;

    bool operator<(const Piece& other) const { return bound < other.bound; }
};

double split_point(double lo, double hi) {
    if (lo > 0.0 && hi / lo > 2.0) {
        return std::sqrt(lo) * std::sqrt(hi);
    }
    return 0.5 * (lo + hi);
}

} // namespace

LinearApproximation approximate_piecewise_linear(const Density& f, double eps,
                                                 const ApproximationOptions& opts) {
    if (!(eps > 0.0)) {
        throw std::domain_error("approximation tolerance must be positive");
    }
    if (auto own = f.linearize(eps)) {
        return std::move(*own);
    }

    // Core window [1/T, T] carrying all but eps/8 of the mass.
    double threshold = 2.0;
    double tail = f.tail_mass(threshold);
    while (tail > eps / 8.0) {
        threshold *= 2.0;
        if (threshold > 1e300) {
            throw tolerance_not_met("tails too heavy to certify the approximation", tail);
        }
        tail = f.tail_mass(threshold);
    }
    const Support s = f.support();
    const double lo = std::max(1.0 / threshold, s.lo);
    const double hi = std::min(threshold, s.hi);
    if (!(hi > lo) || lo <= 0.0) {
        throw tolerance_not_met("empty approximation window", 1.0);
    }

    std::vector<double> seeds{lo, hi};
    for (double b : f.breakpoints()) {
        if (b > lo && b < hi) {
            seeds.push_back(b);
        }
    }
    for (double x = lo * 2.0; x < hi; x *= 2.0) {
        seeds.push_back(x);
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    const double target = 0.5 * eps - tail;
    const QuadratureOptions seg_opts{std::max(target * 1e-5, 1e-18), 20'000};
    auto piece = [&](double a, double b) {
        const double fa = f.pdf(a);
        const double fb = f.pdf(b);
        auto gap = [&](double x) {
            const double h = fa + (fb - fa) * ((x - a) / (b - a));
            return std::abs(f.pdf(x) - h);
        };
        try {
            const Estimate e = integrate(gap, a, b, seg_opts);
            return Piece{a, b, e.value + e.error_bound};
        } catch (const tolerance_not_met&) {
            return Piece{a, b, std::numeric_limits<double>::infinity()};
        }
    };

    std::priority_queue<Piece> heap;
    for (std::size_t i = 0; i + 1 < seeds.size(); ++i) {
        heap.push(piece(seeds[i], seeds[i + 1]));
    }
    auto resum = [](std::priority_queue<Piece> h) {
        double sum = 0.0;
        while (!h.empty()) {
            sum += h.top().bound;
            h.pop();
        }
        return sum;
    };
    double total = resum(heap);

    while (total > target) {
        if (heap.size() + 1 > opts.node_budget) {
            throw tolerance_not_met("node budget exhausted before reaching the L1 target",
                                    total + tail);
        }
        const Piece worst = heap.top();
        const double mid = split_point(worst.lo, worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw tolerance_not_met("approximation segment can no longer be split",
                                    total + tail);
        }
        heap.pop();
        const Piece left = piece(worst.lo, mid);
        const Piece right = piece(mid, worst.hi);
        heap.push(left);
        heap.push(right);
        if (std::isfinite(worst.bound) && std::isfinite(total)) {
            total += left.bound + right.bound - worst.bound;
        } else {
            total = resum(heap);
        }
        if (total <= target) {
            total = resum(heap);
        }
    }

    std::vector<double> nodes;
    nodes.reserve(heap.size() + 1);
    while (!heap.empty()) {
        nodes.push_back(heap.top().lo);
        nodes.push_back(heap.top().hi);
        heap.pop();
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<double> values;
    values.reserve(nodes.size());
    for (double x : nodes) {
        values.push_back(f.pdf(x));
    }
    PiecewiseLinearDensity h(std::move(nodes), std::move(values));
    // ||f - h_raw|| <= total + tail; rescaling adds |raw_mass - 1|.
    const double bound = total + tail + std::abs(h.raw_mass() - 1.0);
    return {std::move(h), bound};
}

std::vector<double> sample(const Density& density, std::size_t n, std::uint64_t seed) {
    if (!density.has_sampler()) {
        throw unsupported_operation("density '" + density.describe() + "' has no sampler");
    }
    return density.sample(n, seed);
}

PiecewiseLinearDensity load_tabulated(std::istream& in) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : read_columns(in, 2)) {
        xs.push_back(row[0]);
        ys.push_back(row[1]);
    }
    return {std::move(xs), std::move(ys)};
}

ExponentialMixture load_mixture(std::istream& in) {
    std::vector<MixtureComponent> parts;
    for (const auto& row : read_columns(in, 2)) {
        parts.push_back({row[0], row[1]});
    }
    return make_exponential_mixture(std::move(parts));
}

} // namespace benford
