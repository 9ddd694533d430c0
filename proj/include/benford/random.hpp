#pragma once

#include <cstdint>
#include <random>

namespace benford {

/// Seeded generator with platform-independent variate conversions.
///
/// std::mt19937_64 output is fixed by the standard; the standard
/// distributions are not, so uniforms and normals are derived here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal variate (Box-Muller, one value per call).
    double normal();

private:
    std::mt19937_64 engine_;
};

} // namespace benford
