#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lipbvp/geometry.hpp"

using namespace lipbvp;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("cone boundary lies on the graph") {
    for (double alpha : {0.25, 0.5, 1.0, 1.5, 1.75}) {
        const ConeDomain cone(alpha);
        const auto map = cone_conformal_map(cone);
        const auto g = cone.graph();
        REQUIRE(cone.lipschitz() == Approx(std::abs(1.0 / std::tan(alpha * pi / 2))).margin(1e-15));
        for (double x : {-3.0, -0.4, 0.2, 1.0, 7.5}) {
            const cplx z = map.boundary(x);
            REQUIRE(z.imag() == Approx(g.gamma(z.real())).margin(1e-12));
            // Phi_1(x) = sign(x)|x|^alpha sin(alpha pi/2)
            const double phi1 = std::copysign(std::pow(std::abs(x), alpha) * std::sin(alpha * pi / 2), x);
            REQUIRE(map.phi1(x) == Approx(phi1).epsilon(1e-13));
            REQUIRE(map.phi1_inverse(map.phi1(x)) == Approx(x).epsilon(1e-12));
        }
    }
}

TEST_CASE("cone map is a conformal bijection onto the domain") {
    for (double alpha : {0.5, 1.5}) {
        const auto map = cone_conformal_map(ConeDomain(alpha));
        for (cplx w : {cplx(0.3, 0.1), cplx(-2.0, 0.5), cplx(0.0, 3.0), cplx(-0.01, 1e-3)}) {
            const cplx z = map.forward(w);
            REQUIRE(map.domain.contains(z));
            REQUIRE(std::abs(map.inverse(z) - w) < 1e-12 * std::max(1.0, std::abs(w)));
            const double h = 1e-6 * std::abs(w);
            const cplx fd = (map.forward(w + h) - map.forward(w - h)) / (2.0 * h);
            REQUIRE(std::abs(fd - map.derivative(w)) < 1e-6 * std::abs(map.derivative(w)));
        }
    }
}

TEST_CASE("identity map and branch of the power") {
    const auto id = identity_map();
    REQUIRE(std::abs(id.forward(cplx(1.5, 2.0)) - cplx(1.5, 2.0)) < 1e-14);
    REQUIRE(std::abs(cut_power(cplx(-1.0, 0.0), 0.5) - cplx(0.0, 1.0)) < 1e-15);
    REQUIRE(std::abs(cut_power(cplx(1.0, -1.0), 0.5) - std::polar(std::pow(2.0, 0.25), -pi / 8)) < 1e-15);
    REQUIRE(std::abs(cut_power(cplx(0.0, -1.0), 0.5) - std::polar(1.0, 3 * pi / 4)) < 1e-15);
}

TEST_CASE("non-tangential cones") {
    REQUIRE_THROWS_AS(check_aperture(1.0, 1.0), DomainError);
    REQUIRE_NOTHROW(check_aperture(0.5, 1.0));
    NTCone cone;
    cone.vertex = cplx(0.5, 0.2);
    cone.aperture = 0.4;
    const auto pts = nt_cone_samples(cone);
    REQUIRE(pts.size() == cone_heights(cone).size() * static_cast<std::size_t>(cone.rays));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        REQUIRE(cone.contains(pts[i]));
        if (i > 0) REQUIRE(std::abs(pts[i] - cone.vertex) >= std::abs(pts[i - 1] - cone.vertex) - 1e-15);
    }
}

TEST_CASE("arc length of the cone graph") {
    const auto g = ConeDomain(0.5).graph();
    REQUIRE(arc_measure(g, 0.0, 1.0) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(arc_measure(g, -1.0, 2.0) == Approx(3.0 * std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(g.empirical_lipschitz({-2.0, -1.0, 0.0, 0.5, 3.0}) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cone images of non-tangential cones stay non-tangential") {
    const double alpha = 0.5, ap = 0.3;
    const double image = cone_image_aperture(alpha, ap);
    REQUIRE(image > ap);
    REQUIRE(image < pi / 2);
    const auto map = cone_conformal_map(ConeDomain(alpha));
    for (double x : {-2.0, 0.0, 0.7}) {
        NTCone src;
        src.vertex = cplx(x, 0.0);
        src.aperture = ap;
        src.r_min = 1e-3;
        src.r_max = 10.0;
        src.levels_per_decade = 6;
        NTCone dst;
        dst.vertex = map.boundary(x);
        dst.aperture = image;
        for (cplx w : nt_cone_samples(src)) REQUIRE(dst.contains(map.forward(w)));
    }
}
