#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lipbvp/quadrature.hpp"

using namespace lipbvp::quad;
using Catch::Approx;

TEST_CASE("Kronrod panel is exact for polynomials up to degree 22") {
    auto r = kronrod15([](double x) { return std::pow(x, 20) - 3.0 * x * x; }, -1.0, 2.0);
    const double exact = (std::pow(2.0, 21) + 1.0) / 21.0 - (8.0 + 1.0);
    REQUIRE(r.value == Approx(exact).epsilon(1e-13));
}

TEST_CASE("adaptive integration of smooth and kinked integrands") {
    REQUIRE(integrate([](double x) { return std::exp(x); }, 0.0, 1.0).value ==
            Approx(std::numbers::e - 1.0).epsilon(1e-13));
    auto r = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0);
    REQUIRE(r.converged);
    REQUIRE(r.value == Approx(0.5 * (0.09 + 0.49)).epsilon(1e-11));
    const double pts[] = {0.0, 0.3, 1.0};
    REQUIRE(integrate_panels([](double x) { return std::abs(x - 0.3); }, pts).value ==
            Approx(0.29).epsilon(1e-14));
}

TEST_CASE("endpoint singularities") {
    REQUIRE(tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value == Approx(2.0).epsilon(1e-10));
    REQUIRE(tanh_sinh([](double x) { return std::log(x); }, 0.0, 1.0).value == Approx(-1.0).epsilon(1e-10));
    REQUIRE(integrate_graded([](double x) { return std::pow(x, -0.75); }, 0.0, 1.0).value ==
            Approx(4.0).epsilon(1e-8));
}

TEST_CASE("half-line integrals") {
    auto r = integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0);
    REQUIRE(r.converged);
    REQUIRE(r.value == Approx(std::numbers::pi / 2).epsilon(1e-11));
    auto d = integrate_to_infinity([](double x) { return 1.0 / (1.0 + x); }, 0.0, 1.0);
    REQUIRE_FALSE(d.converged);
}

TEST_CASE("log-scale integrals") {
    REQUIRE(log_sum_exp(1000.0, 1000.0) == Approx(1000.0 + std::log(2.0)));
    REQUIRE(log_sum_exp(-std::numeric_limits<double>::infinity(), 3.0) == 3.0);

    auto f = log_integral_finite([](double s) { return 2.0 * s; }, 0.0, 1.0);
    REQUIRE(f.finite);
    REQUIRE(std::exp(f.log_value) == Approx((std::exp(2.0) - 1.0) / 2.0).epsilon(1e-12));

    // int_0^1 x^{1/2} dx in s = log x: integrand exp(1.5 s).
    auto t = log_integral_to_minus_infinity([](double s) { return 1.5 * s; }, 0.0);
    REQUIRE(t.finite);
    REQUIRE(std::exp(t.log_value) == Approx(2.0 / 3.0).epsilon(1e-11));

    SECTION("power divergence is flagged") {
        REQUIRE_FALSE(log_integral_to_minus_infinity([](double s) { return -0.5 * s; }, 0.0).finite);
        REQUIRE_FALSE(log_integral_to_minus_infinity([](double s) { return 0.0 * s; }, 0.0).finite);
    }

    SECTION("high log powers converge (Gamma-function oracle)") {
        // int_{-inf}^0 e^s (-s)^m ds = m!
        for (double m : {10.0, 100.0, 400.0}) {
            auto r = log_integral_to_minus_infinity([m](double s) { return s + m * std::log(-s); }, 0.0);
            REQUIRE(r.finite);
            REQUIRE(r.log_value == Approx(std::lgamma(m + 1.0)).epsilon(1e-11));
        }
    }
}
