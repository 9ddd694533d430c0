#include "benford/quadrature.hpp"

#include "benford/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace benford {

namespace {

// Kronrod 15-point abscissae (symmetric, non-negative half) and weights, with
// the embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) {
            gauss += kGaussWeights[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    double err = std::abs(kronrod - gauss);
    // Floor at a few ulps of the segment's magnitude so that exact rules do
    // not report a zero error bound.
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
    if (!std::isfinite(kronrod)) {
        err = std::numeric_limits<double>::infinity();
    }
    return {lo, hi, kronrod, err};
}

double sum_errors(std::priority_queue<Segment> heap) {
    double total = 0.0;
    while (!heap.empty()) {
        total += heap.top().error;
        heap.pop();
    }
    return total;
}

Estimate integrate_finite(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureOptions& opts) {
    constexpr std::size_t kEvalsPerSegment = 15;
    std::priority_queue<Segment> heap;
    heap.push(kronrod(f, lo, hi));
    std::size_t evaluations = kEvalsPerSegment;
    double total_error = heap.top().error;

    while (total_error > opts.tolerance) {
        if (evaluations + 2 * kEvalsPerSegment > opts.budget) {
            throw tolerance_not_met("quadrature budget of " + std::to_string(opts.budget) +
                                        " evaluations exhausted",
                                    total_error);
        }
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw tolerance_not_met("quadrature interval can no longer be subdivided",
                                    total_error);
        }
        heap.pop();
        const Segment left = kronrod(f, worst.lo, mid);
        const Segment right = kronrod(f, mid, worst.hi);
        evaluations += 2 * kEvalsPerSegment;
        heap.push(left);
        heap.push(right);
        total_error += left.error + right.error - worst.error;
        if (total_error <= opts.tolerance) {
            // Confirm with an exact re-sum; the running total can drift
            // through cancellation.
            total_error = sum_errors(heap);
        }
    }

    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error};
}

} // namespace

Estimate integrate(const std::function<double(double)>& f, double lo, double hi,
                   const QuadratureOptions& opts) {
    if (std::isnan(lo) || std::isnan(hi) || !std::isfinite(lo)) {
        throw std::domain_error("integration bounds must be ordered and lo finite");
    }
    if (!(opts.tolerance > 0.0)) {
        throw std::domain_error("quadrature tolerance must be positive");
    }
    if (!(hi > lo)) {
        if (hi == lo) {
            return {0.0, 0.0};
        }
        throw std::domain_error("integration bounds must satisfy lo <= hi");
    }
    if (std::isinf(hi)) {
        auto mapped = [&f, lo](double t) {
            const double s = 1.0 - t;
            return f(lo + t / s) / (s * s);
        };
        return integrate_finite(mapped, 0.0, 1.0, opts);
    }
    return integrate_finite(f, lo, hi, opts);
}

} // namespace benford
