#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lipbvp/harmonic.hpp"

using namespace lipbvp;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

namespace {

/// Same values, evaluated pointwise so the generic quadrature route is used.
BoundaryFunction as_generic(const BoundaryFunction& f) {
    const auto s = f.support();
    return BoundaryFunction::generic([f](double t) { return f(t); }, {}, s, f.breakpoints(), {}, "copy");
}

}  // namespace

TEST_CASE("closed-form anchors for the indicator of [-1,1]") {
    const auto f = BoundaryFunction::indicator(-1.0, 1.0);
    REQUIRE(poisson(f, 0.0, 1.0) == Approx(0.5).margin(1e-15));
    REQUIRE(conjugate_poisson(f, 0.0, 1.0) == Approx(0.0).margin(1e-15));
    // Q_y f(x) = (1/2pi) log(((x+1)^2+y^2)/((x-1)^2+y^2)); boundary limit (1/pi) log|(x+1)/(x-1)|.
    REQUIRE(conjugate_poisson(f, 2.0, 0.5) == Approx(std::log((9.0 + 0.25) / (1.0 + 0.25)) / (2 * pi)));
    REQUIRE(boundary_conjugate(f, 3.0) == Approx(std::log(2.0) / pi));
    REQUIRE(boundary_conjugate(f, 0.5) == Approx(std::log(3.0) / pi));
}

TEST_CASE("closed forms agree with quadrature of the kernels") {
    const std::vector<BoundaryFunction> data{
        BoundaryFunction::piecewise_constant({-2.0, -0.5, 1.0, 1.5}, {1.0, -2.0, 0.5}),
        BoundaryFunction::piecewise_linear({-1.0, 0.0, 0.5, 2.0}, {0.0, 1.0, -0.5, 0.0}),
    };
    for (const auto& f : data) {
        const auto g = as_generic(f);
        for (auto [x, y] : {std::pair{0.1, 0.3}, std::pair{-1.7, 0.05}, std::pair{4.0, 2.0}}) {
            REQUIRE(poisson(f, x, y) == Approx(poisson(g, x, y)).epsilon(1e-10).margin(1e-13));
            REQUIRE(conjugate_poisson(f, x, y) == Approx(conjugate_poisson(g, x, y)).epsilon(1e-10).margin(1e-13));
            REQUIRE(neumann_integral(f, x, y) == Approx(neumann_integral(g, x, y)).epsilon(1e-9).margin(1e-12));
        }
    }
}

TEST_CASE("extensions are harmonic and gradients match finite differences") {
    const auto f = BoundaryFunction::piecewise_linear({-1.0, 0.0, 0.5, 2.0}, {0.0, 1.0, -0.5, 0.0});
    for (const auto& field : {poisson_field(f), neumann_field(f), conjugate_field(f)}) {
        for (auto [x, y] : {std::pair{0.2, 0.4}, std::pair{-2.0, 1.0}, std::pair{3.0, 0.1}}) {
            REQUIRE(std::abs(fd_laplacian(field.value, x, y, 1e-4)) < 1e-6);
            const Vec2 g = field.gradient(x, y);
            const Vec2 fd = fd_gradient(field.value, x, y, 1e-5);
            REQUIRE(g[0] == Approx(fd[0]).margin(1e-7));
            REQUIRE(g[1] == Approx(fd[1]).margin(1e-7));
        }
    }
}

TEST_CASE("Neumann extension: normal derivative recovers the datum") {
    const auto f = BoundaryFunction::bump(0.3, 1.2, 2.0);
    for (double x : {-0.5, 0.3, 1.0, 3.0}) REQUIRE(-neumann_gradient(f, x, 1e-6)[1] == Approx(f(x)).margin(1e-5));
    REQUIRE_THROWS_AS(neumann_integral(BoundaryFunction::constant(1.0), 0.0, 1.0), DomainError);
}

TEST_CASE("two gradient routes for the Poisson extension") {
    const auto f = BoundaryFunction::bump(-0.4, 0.8);
    for (auto [x, y] : {std::pair{0.0, 0.2}, std::pair{1.0, 0.05}, std::pair{-3.0, 2.0}}) {
        const Vec2 a = dirichlet_gradient(f, x, y);
        const Vec2 b = poisson_gradient_direct(f, x, y);
        REQUIRE(a[0] == Approx(b[0]).epsilon(1e-9).margin(1e-14));
        REQUIRE(a[1] == Approx(b[1]).epsilon(1e-9).margin(1e-14));
        // |grad u_{f,D}| = |grad u_{f',N}|
        const Vec2 n = neumann_gradient(f.derivative(), x, y);
        REQUIRE(std::hypot(n[0], n[1]) == Approx(std::hypot(b[0], b[1])).epsilon(1e-9));
    }
}

TEST_CASE("weak derivative pullback on a cone") {
    const auto map = cone_conformal_map(ConeDomain(0.5));
    const CurveFunction g{BoundaryFunction::hat(-1.0, 0.25, 1.5)};
    const auto f = weak_derivative_pullback(g, map);
    for (double x : {-1.3, -0.2, 0.4, 2.0}) {
        REQUIRE(f(x) == Approx(g.param(map.phi1(x))));
        REQUIRE(std::abs(pullback_derivative_complex(g, map, x).imag()) < 1e-12);
        const double h = 1e-6;
        REQUIRE(f.derivative_at(x) == Approx((f(x + h) - f(x - h)) / (2 * h)).epsilon(1e-6));
    }
    for (double c : {-1.0, 0.0, 0.9}) {
        REQUIRE(weak_derivative_pairing(f, BoundaryFunction::hat(c - 0.5, c, c + 0.5)) < 1e-10);
    }
}

TEST_CASE("log-majorization of the analytic field") {
    std::vector<std::array<double, 2>> pts{{0.0, 0.1}, {1.0, 0.5}, {-3.0, 2.0}, {0.9, 0.01}};
    const auto lm = log_majorization_check(BoundaryFunction::indicator(-1.0, 1.0), pts);
    REQUIRE(lm.skipped.empty());
    REQUIRE(lm.max_violation <= 1e-8);
}

TEST_CASE("Poisson semigroup and maximum principle") {
    const auto f = BoundaryFunction::indicator(-1.0, 2.0, 3.0);
    for (double x = -4.0; x <= 4.0; x += 0.5) {
        const double u = poisson(f, x, 0.3);
        REQUIRE(u >= 0.0);
        REQUIRE(u <= 3.0);
    }
    // P_{s+t} f = P_s (P_t f) at one point.
    const auto pt = BoundaryFunction::generic([f](double t) { return poisson(f, t, 0.4); }, {}, std::nullopt, {}, {},
                                              "P_t f");
    REQUIRE(poisson(pt, 0.3, 0.6) == Approx(poisson(f, 0.3, 1.0)).epsilon(1e-9));
}
