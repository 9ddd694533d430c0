#include "benford/random.hpp"

#include <cmath>
#include <numbers>

namespace benford {

double Rng::normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace benford
