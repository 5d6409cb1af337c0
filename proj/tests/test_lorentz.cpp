#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lipbvp/lorentz.hpp"
#include "lipbvp/maximal.hpp"

using namespace lipbvp;
using Catch::Approx;

TEST_CASE("Lorentz norms of a two-level step function") {
    // f = 2 on [0,1), 1 on [1,3): distribution 3 below level 1, 1 between 1 and 2.
    const SampledFunction f({0.0, 1.0, 3.0}, {2.0, 1.0});
    for (double p : {1.0, 1.5, 3.0}) {
        REQUIRE(lorentz_norm(f, Weight::one(), p, LorentzQ::One) == Approx(std::pow(3.0, 1.0 / p) + 1.0));
        REQUIRE(lorentz_norm(f, Weight::one(), p, LorentzQ::Infinity) ==
                Approx(std::max(std::pow(3.0, 1.0 / p), 2.0)));
        const std::vector<double> v{2.0, 1.0}, m{1.0, 2.0};
        REQUIRE(lebesgue_norm(v, m, p) == Approx(std::pow(std::pow(2.0, p) + 2.0, 1.0 / p)));
    }
}

TEST_CASE("Lorentz norm properties") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(12), m(12);
        for (int i = 0; i < 12; ++i) {
            v[i] = u(rng) < 0.2 ? 0.5 : u(rng);
            m[i] = 0.1 + u(rng);
        }
        const double p = 1.0 + 3.0 * u(rng);
        const double weak = lorentz_norm(v, m, p, LorentzQ::Infinity);
        const double one = lorentz_norm(v, m, p, LorentzQ::One);
        const double strong = lebesgue_norm(v, m, p);
        // L^{p,1} -> L^p -> L^{p,inf} with constant 1 in this normalization.
        REQUIRE(weak <= strong * (1.0 + 1e-12));
        REQUIRE(strong <= one * (1.0 + 1e-12));
        // Rearrangement invariance.
        std::vector<double> rv(v.rbegin(), v.rend()), rm(m.rbegin(), m.rend());
        REQUIRE(lorentz_norm(rv, rm, p, LorentzQ::One) == Approx(one).epsilon(1e-14));
        // Homogeneity.
        for (auto& x : v) x *= 3.0;
        REQUIRE(lorentz_norm(v, m, p, LorentzQ::One) == Approx(3.0 * one).epsilon(1e-13));
    }
}

TEST_CASE("step function evaluation and integrals") {
    const SampledFunction f({-1.0, 0.0, 2.0}, {3.0, -1.0});
    REQUIRE(f(-0.5) == 3.0);
    REQUIRE(f(1.0) == -1.0);
    REQUIRE(f(2.0) == 0.0);
    REQUIRE(f.integral(-0.5, 1.0) == Approx(1.5 - 1.0));
    const auto m = f.masses(Weight::power(1.0));
    REQUIRE(m[0] == Approx(0.5));
    REQUIRE(m[1] == Approx(2.0));
}

TEST_CASE("Hardy-Littlewood maximal of an indicator") {
    const SampledFunction f({0.0, 1.0}, {1.0});
    for (double x : {0.0, 0.3, 0.999}) REQUIRE(hl_maximal(f, x) == Approx(1.0));
    for (double x : {1.5, 4.0}) REQUIRE(hl_maximal(f, x) == Approx(1.0 / x));
    for (double x : {-0.5, -3.0}) REQUIRE(hl_maximal(f, x) == Approx(1.0 / (1.0 - x)));
    REQUIRE(base_maximal(f, Weight::one(), 2.0) == Approx(0.5));
}

TEST_CASE("maximal function dominates the function and is sublinear") {
    const SampledFunction f({0.0, 0.5, 1.0, 2.0}, {1.0, -4.0, 2.0});
    const SampledFunction g({0.0, 1.0, 3.0}, {2.0, 1.0});
    const SampledFunction s({0.0, 0.5, 1.0, 2.0, 3.0}, {3.0, -2.0, 3.0, 1.0});
    for (double x = -1.0; x <= 4.0; x += 0.173) {
        REQUIRE(hl_maximal(f, x) >= std::abs(f(x)) - 1e-15);
        REQUIRE(hl_maximal(s, x) <= hl_maximal(f, x) + hl_maximal(g, x) + 1e-12);
    }
}

TEST_CASE("non-tangential maximal over cone samples") {
    NTCone tmpl;
    tmpl.r_min = 0.01;
    tmpl.r_max = 10.0;
    tmpl.levels_per_decade = 5;
    auto field = [](cplx z) { return 1.0 / std::abs(z + cplx(0.0, 1.0)); };
    const std::vector<cplx> pts{cplx(0.0, 0.0), cplx(2.0, 0.0)};
    const auto m = nt_maximal(field, pts, tmpl);
    REQUIRE(m.failures == 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        NTCone c = tmpl;
        c.vertex = pts[i];
        double best = 0.0;
        for (cplx z : nt_cone_samples(c)) best = std::max(best, field(z));
        REQUIRE(m.values[i] == best);
        REQUIRE(best < field(pts[i]));
    }
}
