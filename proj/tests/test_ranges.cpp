#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lipbvp/ranges.hpp"
#include "lipbvp/solvers.hpp"

using namespace lipbvp;
using Catch::Approx;

namespace {

/// |Phi'|^{-p} Phi(nu) = c |x|^{e}: A_p iff -1 < e < p - 1.
bool exponent_oracle(double alpha, double beta, double p) {
    const double e = alpha * beta + (alpha - 1.0) * (1.0 - p);
    return e > -1.0 && e < p - 1.0;
}

}  // namespace

TEST_CASE("cone corollary ranges") {
    const auto r = neumann_range(Weight::power(0.0), cone_conformal_map(ConeDomain(1.5)));
    REQUIRE(r.p_phi == Approx(1.5));
    REQUIRE(r.p_minus == Approx(1.0));
    REQUIRE(r.p_plus == Approx(3.0));
    const auto h = neumann_range(Weight::power(0.0), identity_map());
    REQUIRE(h.p_minus == 1.0);
    REQUIRE(std::isinf(h.p_plus));
    REQUIRE(neumann_range(Weight::power(-0.8), cone_conformal_map(ConeDomain(1.5))).empty);
}

TEST_CASE("ranges agree with the exponent condition on a sweep") {
    for (double alpha : {0.25, 0.75, 1.25, 1.75}) {
        const auto map = cone_conformal_map(ConeDomain(alpha));
        for (double beta : {-0.9, -0.3, 0.0, 0.8, 2.0}) {
            const auto r = neumann_range(Weight::power(beta), map);
            for (double p = 1.01; p < 30.0; p *= 1.07) {
                if (std::abs(p - r.p_minus) < 1e-9 || std::abs(p - r.p_plus) < 1e-9) continue;
                INFO("alpha=" << alpha << " beta=" << beta << " p=" << p);
                REQUIRE(r.contains(p) == exponent_oracle(alpha, beta, p));
            }
        }
    }
}

TEST_CASE("numeric range fallback matches the closed form") {
    const auto map = cone_conformal_map(ConeDomain(1.5));
    const auto r = neumann_range_numeric(Weight::power(0.0), map);
    REQUIRE_FALSE(r.empty);
    REQUIRE(r.p_minus == Approx(1.0).margin(1e-3));
    REQUIRE(r.p_plus == Approx(3.0).margin(1e-3));
}

TEST_CASE("Dirichlet thresholds") {
    const auto map = cone_conformal_map(ConeDomain(1.5));
    const auto cf = dirichlet_threshold(Weight::power(0.2), map);
    REQUIRE(cf.p_phi == Approx(1.8));
    REQUIRE(cf.restricted_endpoint);
    const auto lg = dirichlet_threshold(Weight::power_log(0.2), map);
    REQUIRE(lg.p_phi == Approx(1.8));
    REQUIRE_FALSE(lg.restricted_endpoint);
    REQUIRE(dirichlet_guaranteed(Weight::power(0.2), map, 2.0));
    REQUIRE_FALSE(dirichlet_guaranteed(Weight::power(0.2), map, 1.7));
}

TEST_CASE("H1 condition") {
    REQUIRE(h1_condition(Weight::power(-0.5), identity_map()).holds);
    REQUIRE_FALSE(h1_condition(Weight::power(0.5), identity_map()).holds);
}

TEST_CASE("sufficient S_p^R condition for the cone pair") {
    const auto map = cone_conformal_map(ConeDomain(1.5));
    const auto v = spr_sufficient(derivative_modulus(map), pushforward(Weight::one(), map), 3.0);
    REQUIRE(v.holds);
    REQUIRE(v.v_ainf);
}

TEST_CASE("duality identity and implication") {
    std::vector<double> grid;
    for (int k = -12; k <= 12; ++k) grid.push_back(std::pow(10.0, k / 3.0));
    for (double alpha : {0.3, 1.0, 1.7}) {
        const auto map = cone_conformal_map(ConeDomain(alpha));
        for (double p : {1.2, 2.0, 4.5}) {
            const auto d = duality_identity_check(Weight::power(0.6), map, p, grid);
            REQUIRE(d.max_rel_error <= 1e-12);
            REQUIRE(d.skipped == 0);
        }
        const auto [ex, n] = duality_implication(map, Weight::power(0.4), {1.5, 2.0, 3.0, 5.0});
        REQUIRE(ex == 0);
    }
}

TEST_CASE("solvability report") {
    const auto r = solvability_report(cone_conformal_map(ConeDomain(1.5)), Weight::power(0.0));
    REQUIRE(r.range.p_plus == Approx(3.0));
    REQUIRE(r.spr_plus);
    REQUIRE(r.duality_exceptions == 0);
    REQUIRE(r.duality_checked > 0);
    const auto e = solvability_report(cone_conformal_map(ConeDomain(1.5)), Weight::power(-0.8));
    REQUIRE(e.range.empty);
    REQUIRE(e.notes.front() == "no L^p solvability guaranteed");
}
