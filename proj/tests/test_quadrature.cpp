#include "benford/errors.hpp"
#include "benford/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace benford;

TEST_CASE("smooth integrands") {
    const Estimate s = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(std::abs(s.value - 2.0) <= std::max(s.error_bound, 1e-14));
    CHECK(s.error_bound <= 1e-10);

    const Estimate poly = integrate([](double x) { return x * x * x; }, 0.0, 2.0);
    CHECK(std::abs(poly.value - 4.0) < 1e-14);
}

TEST_CASE("semi-infinite range") {
    const Estimate e = integrate([](double x) { return std::exp(-x); }, 0.0,
                                 std::numeric_limits<double>::infinity());
    CHECK(std::abs(e.value - 1.0) < 1e-10);

    const Estimate tail = integrate([](double x) { return 1.0 / (x * x); }, 1.0,
                                    std::numeric_limits<double>::infinity(), {1e-9, 1'000'000});
    CHECK(std::abs(tail.value - 1.0) < 1e-9);
}

TEST_CASE("discontinuous integrand converges through subdivision") {
    auto step = [](double x) { return x < 0.3 ? 1.0 : 0.0; };
    const Estimate e = integrate(step, 0.0, 1.0, {1e-9, 1'000'000});
    CHECK(std::abs(e.value - 0.3) <= e.error_bound + 1e-15);
}

TEST_CASE("empty and invalid ranges") {
    const Estimate e = integrate([](double) { return 1.0; }, 2.0, 2.0);
    CHECK(e.value == 0.0);
    CHECK(e.error_bound == 0.0);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, {0.0, 100}),
                    std::domain_error);
}

TEST_CASE("budget exhaustion reports the achieved bound") {
    auto singular = [](double x) { return 1.0 / std::sqrt(x); };
    try {
        integrate(singular, 0.0, 1.0, {1e-14, 200});
        FAIL("expected tolerance_not_met");
    } catch (const tolerance_not_met& e) {
        CHECK(e.achieved() > 1e-14);
        CHECK(std::isfinite(e.achieved()));
    }
}
