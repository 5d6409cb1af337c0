#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lipbvp/solvers.hpp"

using namespace lipbvp;
using Catch::Approx;

namespace {

SolveOptions fast() {
    SolveOptions o;
    o.boundary_points = 16;
    o.levels_per_decade = 2;
    o.rays = 3;
    return o;
}

}  // namespace

TEST_CASE("Dirichlet problem with constant data") {
    const auto map = cone_conformal_map(ConeDomain(1.5));
    const auto s = solve_dirichlet(map, Weight::one(), {BoundaryFunction::constant(1.0)}, 2.0, Space::Lp, fast());
    REQUIRE(s.diagnostics.boundary_error <= 1e-10);
    REQUIRE(s.value(cplx(0.3, 2.0)) == Approx(1.0).margin(1e-14));
    const Vec2 g = s.gradient(cplx(-0.5, 1.0));
    REQUIRE(std::hypot(g[0], g[1]) < 1e-14);
}

TEST_CASE("Dirichlet transfer keeps cells exact") {
    const auto map = cone_conformal_map(ConeDomain(0.5));
    const CurveFunction g{BoundaryFunction::indicator(-1.0, 2.0)};
    const auto f = transfer_dirichlet_datum(g, map);
    REQUIRE(f.kind() == BoundaryFunction::Kind::PiecewiseConstant);
    for (double x : {-3.0, -1.0, 0.5, 5.0, 9.0}) REQUIRE(f(x) == g.param(map.phi1(x)));
}

TEST_CASE("Dirichlet solution on a cone is harmonic with the right boundary values") {
    const auto map = cone_conformal_map(ConeDomain(0.5));
    const CurveFunction g{BoundaryFunction::indicator(-1.0, 2.0)};
    const auto s = solve_dirichlet(map, Weight::one(), g, 2.0, Space::Lp, fast());
    REQUIRE(s.diagnostics.boundary_error <= 1e-3);
    const auto v = [&s](double x, double y) { return s.value(cplx(x, y)); };
    for (cplx z : {cplx(0.2, 2.0), cplx(-1.0, 3.0)}) REQUIRE(std::abs(fd_laplacian(v, z.real(), z.imag(), 1e-3)) < 1e-5);
    // Gradient transfer against finite differences of v.
    const cplx z(0.4, 1.7);
    const Vec2 grad = s.gradient(z);
    const Vec2 fd = fd_gradient(v, z.real(), z.imag(), 1e-6);
    REQUIRE(grad[0] == Approx(fd[0]).margin(1e-7));
    REQUIRE(grad[1] == Approx(fd[1]).margin(1e-7));
}

TEST_CASE("Neumann problem on the half-plane") {
    const auto s = solve_neumann(identity_map(), Weight::one(), {BoundaryFunction::indicator(-1.0, 1.0)}, 2.0,
                                 Space::Lp, fast());
    REQUIRE(s.diagnostics.boundary_error <= 1e-3);
    REQUIRE(s.diagnostics.guaranteed);
    REQUIRE(std::isfinite(s.diagnostics.ratio));
    REQUIRE(s.diagnostics.ratio > 0.0);
}

TEST_CASE("Neumann problem on a cone: flux through the boundary") {
    const auto map = cone_conformal_map(ConeDomain(1.5));
    const CurveFunction g{BoundaryFunction::bump(0.5, 1.0)};
    const auto s = solve_neumann(map, Weight::one(), g, 2.0, Space::Lp, fast());
    REQUIRE(s.diagnostics.boundary_error <= 1e-3);
    const auto f = transfer_neumann_datum(g, map);
    for (double x : {-0.2, 0.3, 0.8}) {
        REQUIRE(f(x) == Approx(g.param(map.phi1(x)) * map.boundary_derivative_modulus(x)));
    }
}

TEST_CASE("Regularity problem: two gradient routes and the transfer identity") {
    const auto map = cone_conformal_map(ConeDomain(1.5));
    const auto s = solve_regularity(map, Weight::one(), {BoundaryFunction::bump(0.4, 1.0)}, 2.0, Space::Lp, fast());
    REQUIRE(s.diagnostics.bridge_error <= 1e-8);
    REQUIRE(s.diagnostics.transfer_identity_error <= 1e-5);
    REQUIRE(s.diagnostics.boundary_error <= 1e-3);
    REQUIRE_THROWS_AS(solve_regularity(map, Weight::one(), {BoundaryFunction::indicator(0.0, 1.0)}, 2.0), DomainError);
}

TEST_CASE("data outside the integrability classes are rejected") {
    const auto growing = BoundaryFunction::generic([](double t) { return t * t; }, [](double t) { return 2 * t; },
                                                   std::nullopt, {}, {}, "t^2");
    REQUIRE_THROWS_AS(solve_dirichlet(identity_map(), Weight::one(), {growing}, 2.0), DomainError);
    REQUIRE_THROWS_AS(solve_neumann(identity_map(), Weight::one(), {BoundaryFunction::constant(1.0)}, 2.0),
                      DomainError);
}

TEST_CASE("Lorentz Neumann solves at the endpoints") {
    const auto map = cone_conformal_map(ConeDomain(1.5));
    const CurveFunction g{BoundaryFunction::indicator(-1.0, 1.0)};
    const auto s = solve_neumann(map, Weight::one(), g, 3.0, Space::Lorentz, fast());
    REQUIRE(s.diagnostics.guaranteed);
    REQUIRE(s.diagnostics.datum_norm > 0.0);
    const auto inner = solve_neumann(map, Weight::one(), g, 2.0, Space::Lorentz, fast());
    REQUIRE_FALSE(inner.diagnostics.guaranteed);
    // alpha = 1/2, beta = 1: R = (2, inf); p_- needs opt-in.
    const auto m2 = cone_conformal_map(ConeDomain(0.5));
    REQUIRE_THROWS_AS(solve_neumann(m2, Weight::power(1.0), g, 2.0, Space::Lorentz, fast()), DomainError);
}

TEST_CASE("atoms") {
    const Weight w = Weight::power(-0.5);
    const auto half = GraphDomain::half_plane();
    for (auto [c, r] : {std::pair{0.0, 1.0}, std::pair{3.0, 0.2}, std::pair{-0.1, 0.5}}) {
        const auto a = make_atom(c, r, w, half);
        REQUIRE(check_atom(a, w, half).ok(1e-10));
    }
    const auto cone = ConeDomain(0.5).graph();
    REQUIRE(check_atom(make_atom(0.2, 0.7, Weight::one(), cone), Weight::one(), cone).ok(1e-10));

    AtomicDatum d;
    d.atoms = {make_atom(0.0, 1.0, w, half), make_atom(2.0, 0.5, w, half)};
    d.coefficients = {0.5, -0.25};
    REQUIRE(d.coefficient_norm() == Approx(0.75));
    const auto s = solve_neumann_atomic(identity_map(), w, d, fast());
    REQUIRE(s.diagnostics.guaranteed);
    REQUIRE(std::isfinite(s.diagnostics.nt_max_norm));
    REQUIRE(s.diagnostics.boundary_error <= 1e-3);
}

TEST_CASE("degenerate ratio for zero data") {
    const auto s = solve_dirichlet(identity_map(), Weight::one(), {BoundaryFunction::zero()}, 2.0, Space::Lp, fast());
    REQUIRE(s.diagnostics.status == "degenerate");
    REQUIRE(std::isnan(s.diagnostics.ratio));
}
