#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lipbvp/weight_classes.hpp"
#include "lipbvp/weights.hpp"

using namespace lipbvp;
using Catch::Approx;

namespace {

double power_integral(double beta, double a, double b) {
    auto F = [beta](double x) { return std::copysign(std::pow(std::abs(x), beta + 1.0), x) / (beta + 1.0); };
    return F(b) - F(a);
}

}  // namespace

TEST_CASE("symbolic weights evaluate pointwise") {
    REQUIRE(Weight::power(0.5, 2.0)(4.0) == Approx(4.0));
    REQUIRE(Weight::power(-0.5)(-4.0) == Approx(0.5));
    const double x = 0.01;
    REQUIRE(Weight::power_log(1.0)(x) == Approx(x / (1.0 + std::log(1.0 / x))));
    REQUIRE(Weight::power_log(1.0)(3.0) == Approx(3.0));
    REQUIRE(Weight::log_cap(2.0)(x) == Approx(2.0 * std::log(1.0 / x)));
    REQUIRE(Weight::log_cap(2.0)(0.9) == Approx(1.0));
    REQUIRE(Weight::power(0.3).pow(2.0)(2.0) == Approx(std::pow(2.0, 0.6)));
    REQUIRE(multiply(Weight::power(0.3), Weight::power(0.2)).power_exponent().value() == Approx(0.5));
}

TEST_CASE("weight integrals against closed forms") {
    for (double beta : {-0.9, -0.5, 0.0, 0.7, 2.0}) {
        const Weight w = Weight::power(beta);
        for (auto [a, b] : {std::pair{-1.0, 2.0}, std::pair{0.5, 0.50001}, std::pair{-3.0, -1e-9}, std::pair{0.0, 1e-30}}) {
            REQUIRE(integral(w, a, b) == Approx(power_integral(beta, a, b)).epsilon(1e-10));
        }
    }
    REQUIRE(std::isinf(integral(Weight::power(-1.0), -1.0, 1.0)));
    REQUIRE(std::isinf(integral(Weight::power(-1.5), 0.0, 1.0)));

    // int_0^1 1/(1 + log(1/x)) dx = e E_1(1) = 0.596347362323194...
    REQUIRE(integral(Weight::power_log(0.0), 0.0, 1.0) == Approx(0.5963473623231940743).epsilon(1e-11));
    // int_0^1 log(1/x) dx = 1.
    // max(1, -log x) on (0,1): int_0^{1/e} -log x + (1 - 1/e) = 1 + 1/e.
    REQUIRE(integral(Weight::log_cap(1.0), 0.0, 1.0) == Approx(1.0 + std::exp(-1.0)).epsilon(1e-11));
}

TEST_CASE("log-scale origin integrals reach far below double lengths") {
    // int_0^h x^2 dx = h^3/3 with h = e^{-400}.
    const auto r = log_integral_origin(Weight::power(2.0), -400.0);
    REQUIRE(r.finite);
    REQUIRE(r.log_value == Approx(-1200.0 - std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("pushforward under the cone map") {
    for (double alpha : {0.5, 1.5}) {
        const auto map = cone_conformal_map(ConeDomain(alpha));
        for (const Weight& nu : {Weight::power(0.4), Weight::power_log(-0.3), Weight::log_cap(1.0)}) {
            const Weight pf = pushforward(nu, map);
            for (double x : {-2.0, -0.01, 0.3, 5.0}) {
                const double direct = nu.on_curve(map.boundary(x)) * map.boundary_derivative_modulus(x);
                REQUIRE(pf(x) == Approx(direct).epsilon(1e-12));
            }
        }
        REQUIRE(derivative_modulus(map)(2.0) == Approx(alpha * std::pow(2.0, alpha - 1.0)));
    }
}

TEST_CASE("power weights in A_p: closed form") {
    REQUIRE(ap_member_closed_form(Weight::power(0.5), 2.0));
    REQUIRE_FALSE(ap_member_closed_form(Weight::power(1.0), 2.0));
    REQUIRE(ap_member_closed_form(Weight::power(1.0), 2.0, Restricted::Yes));
    REQUIRE_FALSE(ap_member_closed_form(Weight::power(-1.0), 2.0, Restricted::Yes));
    REQUIRE(ap_member_closed_form(Weight::power(-0.5), 1.0));
    REQUIRE_FALSE(ap_member_closed_form(Weight::power(0.1), 1.0));
    REQUIRE(ainf_member_closed_form(Weight::power(7.0)));
    REQUIRE_FALSE(ainf_member_closed_form(Weight::power(-1.0)));
    REQUIRE_THROWS_AS(ap_member_closed_form(Weight::custom([](double) { return 1.0; }, {}), 2.0), UnsupportedError);
}

TEST_CASE("A_2 constant of |x|^{1/2} on origin-anchored intervals is 4/3") {
    // avg over [0,h] of x^{1/2} is (2/3)h^{1/2}; of x^{-1/2} is 2h^{-1/2}.
    IntervalGrid grid;
    grid.shifts = {0.0};
    const auto e = ap_constant_estimate(Weight::power(0.5), 2.0, grid);
    REQUIRE_FALSE(e.divergent);
    REQUIRE(e.value == Approx(4.0 / 3.0).epsilon(1e-10));
    REQUIRE(ap_constant_estimate(Weight::one(), 3.0).value == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("numeric and closed-form A_p verdicts agree away from the boundary") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> up(1.1, 4.0), ub(-1.5, 4.5);
    int checked = 0;
    while (checked < 40) {
        const double p = up(rng), beta = ub(rng);
        if (std::abs(beta + 1.0) < 0.05 || std::abs(beta - p + 1.0) < 0.05) continue;
        const Weight w = Weight::power(beta);
        INFO("beta=" << beta << " p=" << p);
        REQUIRE(ap_member_numeric(w, p) == ap_member_closed_form(w, p));
        ++checked;
    }
}

TEST_CASE("restricted endpoint beta = p - 1") {
    for (double p : {1.5, 2.0, 3.0}) {
        const Weight w = Weight::power(p - 1.0);
        REQUIRE_FALSE(ap_member_numeric(w, p));
        REQUIRE(apr_member_numeric(w, p));
    }
}

TEST_CASE("power-log weights at the threshold") {
    // |x|^{p-1}/(1+log) keeps A_q for q > p and loses A_p^R.
    const Weight w = Weight::power_log(1.0);
    REQUIRE_FALSE(ap_member_closed_form(w, 2.0, Restricted::Yes));
    REQUIRE(ap_member_closed_form(w, 2.05));
    REQUIRE_FALSE(apr_member_numeric(w, 2.0));
    REQUIRE(ap_member_numeric(w, 2.1));
}

TEST_CASE("threshold bisection") {
    const auto b = threshold_bisect([](double q) { return q >= 2.5; });
    REQUIRE(b.lo <= 2.5);
    REQUIRE(b.hi >= 2.5);
    REQUIRE(b.hi - b.lo <= 1e-4);
    REQUIRE(std::isinf(threshold_bisect([](double) { return false; }).hi));
}
