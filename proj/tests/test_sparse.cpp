#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lipbvp/sparse.hpp"

using namespace lipbvp;
using Catch::Approx;

namespace {

Rational union_length(const std::vector<RInterval>& u) {
    Rational acc(0);
    for (const auto& q : u) acc += q.length();
    return acc;
}

}  // namespace

TEST_CASE("chain families are sparse with exact E_Q") {
    SparseSpec spec;
    spec.rule = SparseSpec::Rule::Chain;
    spec.depth = 6;
    spec.target = Rational(0);
    const auto b = make_sparse_family(spec);
    REQUIRE(b.family);
    const auto& fam = *b.family;
    REQUIRE(fam.intervals.size() == 7);
    for (std::size_t i = 0; i < fam.intervals.size(); ++i) {
        REQUIRE(union_length(fam.E[i]) >= fam.eta * fam.intervals[i].length());
        for (const auto& e : fam.E[i]) {
            REQUIRE(e.a >= fam.intervals[i].a);
            REQUIRE(e.b <= fam.intervals[i].b);
        }
        for (std::size_t j = i + 1; j < fam.intervals.size(); ++j)
            for (const auto& x : fam.E[i])
                for (const auto& y : fam.E[j]) REQUIRE_FALSE(std::max(x.a, y.a) < std::min(x.b, y.b));
    }
}

TEST_CASE("full dyadic trees are rejected") {
    SparseSpec spec;
    spec.rule = SparseSpec::Rule::FullTree;
    spec.depth = 2;
    const auto b = make_sparse_family(spec);
    REQUIRE_FALSE(b.family);
    REQUIRE(b.counterexample);
    REQUIRE_FALSE(b.reason.empty());
}

TEST_CASE("overlapping, non-nested intervals are rejected") {
    const std::vector<RInterval> bad{{Rational(0), Rational(2)}, {Rational(1), Rational(3)}};
    const auto b = make_sparse_family(bad, Rational(1, 2));
    REQUIRE_FALSE(b.family);
}

TEST_CASE("sparse operator values") {
    const std::vector<RInterval> fam{{Rational(0), Rational(1)}, {Rational(0), Rational(1, 2)}};
    const SampledFunction f({0.0, 0.25}, {4.0});
    // [0,1): average 1; [0,1/2): average 2.
    REQUIRE(sparse_apply(fam, f, 0.1) == Approx(3.0));
    REQUIRE(sparse_apply(fam, f, 0.7) == Approx(1.0));
    REQUIRE(sparse_apply(fam, f, 1.5) == 0.0);
}

TEST_CASE("random families pass the sparseness check exactly when they should") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SparseSpec spec;
        spec.rule = SparseSpec::Rule::Random;
        spec.depth = 5;
        spec.seed = seed;
        const auto b = make_sparse_family(spec);
        REQUIRE((b.family.has_value() != b.counterexample.has_value()));
        if (b.family) {
            for (std::size_t i = 0; i < b.family->intervals.size(); ++i)
                REQUIRE(union_length(b.family->E[i]) >= b.family->eta * b.family->intervals[i].length());
        }
    }
}

TEST_CASE("Sawyer ratios: bounded pair and failing pair") {
    // |Phi'| and Phi(1) for the cone with alpha = 3/2.
    const Weight u = Weight::power(0.5, 1.5), v = Weight::power(0.5, 1.5);
    double first = 0.0, last = 0.0, strong0 = 0.0, strong2 = 0.0;
    for (int level = 0; level < 3; ++level) {
        SawyerSpec s;
        s.level = level;
        const auto good = sawyer_ratio_test(u, v, 3.0, s);
        const auto bad = sawyer_ratio_test(Weight::power(2.0), Weight::one(), 2.0, s);
        REQUIRE(good.skipped == 0);
        if (level == 0) {
            first = good.sup_ratio;
            strong0 = bad.strong_sup;
        }
        last = good.sup_ratio;
        strong2 = bad.strong_sup;
        for (const auto& t : good.trials) REQUIRE(t.ratio == Approx(t.numerator / t.denominator));
    }
    REQUIRE(last / first < 2.0);
    REQUIRE(strong2 / strong0 > 4.0);
}

TEST_CASE("Sawyer CSV is deterministic and quoted") {
    SawyerSpec s;
    s.random_unions = 4;
    const auto a = sawyer_csv(sawyer_ratio_test(Weight::one(), Weight::one(), 2.0, s));
    const auto b = sawyer_csv(sawyer_ratio_test(Weight::one(), Weight::one(), 2.0, s));
    REQUIRE(a == b);
    REQUIRE(a.rfind("family_id,E_spec,p,numerator,denominator,ratio\n", 0) == 0);
    // Interval lists contain commas and must be quoted.
    REQUIRE(a.find(",\"[") != std::string::npos);
}

TEST_CASE("rational interval formatting") {
    REQUIRE(RInterval{Rational(-1, 2), Rational(3)}.str() == "[-1/2,3)");
    REQUIRE(RInterval{Rational(0), Rational(1, 4)}.contains(0.0));
    REQUIRE_FALSE(RInterval{Rational(0), Rational(1, 4)}.contains(0.25));
}
