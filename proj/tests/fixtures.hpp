#pragma once

#include "benford/densities.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace benford::fixtures {

/// Uniform on [1,2) u [3,4), height 1/2.
inline PiecewiseConstantDensity step_density() {
    return {{1.0, 2.0, 3.0, 4.0}, {0.5, 0.0, 0.5}};
}

inline PiecewiseLinearDensity triangle_density() {
    return {{1.0, 3.0, 5.0}, {0.0, 1.0, 0.0}};
}

/// Every builtin density kind, by name.
inline std::vector<std::pair<std::string, std::shared_ptr<const Density>>> builtin() {
    return {
        {"uniform[1,2)", std::make_shared<UniformDensity>(1.0, 2.0)},
        {"uniform[3,700)", std::make_shared<UniformDensity>(3.0, 700.0)},
        {"exponential(1)", std::make_shared<ExponentialDensity>(1.0)},
        {"exponential(0.1)", std::make_shared<ExponentialDensity>(0.1)},
        {"exponential(37)", std::make_shared<ExponentialDensity>(37.0)},
        {"mixture", std::make_shared<ExponentialMixture>(std::vector<MixtureComponent>{
                        {0.5, 1.0}, {0.5, 10.0}})},
        {"benford-exact", std::make_shared<BenfordExactDensity>()},
        {"truncated-normal(5,1)", std::make_shared<TruncatedNormalDensity>(5.0, 1.0)},
        {"truncated-normal(0.5,2)", std::make_shared<TruncatedNormalDensity>(0.5, 2.0)},
        {"step", std::make_shared<PiecewiseConstantDensity>(step_density())},
        {"triangle", std::make_shared<PiecewiseLinearDensity>(triangle_density())},
        {"scaled-exponential", std::make_shared<ScaledDensity>(
                                   std::make_shared<ExponentialDensity>(1.0), 3.7)},
        // Log-normal body cut to [0.05, 400]; mass by quadrature.
        {"generic-lognormal", std::make_shared<GenericDensity>(
                                  [](double x) {
                                      const double l = std::log(x);
                                      return std::exp(-0.5 * l * l) / x;
                                  },
                                  0.05, 400.0, 1.7, "lognormal")},
    };
}

} // namespace benford::fixtures
