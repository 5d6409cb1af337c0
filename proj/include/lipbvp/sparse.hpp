#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "lipbvp/lorentz.hpp"
#include "lipbvp/weight_classes.hpp"
#include "lipbvp/weights.hpp"

namespace lipbvp {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r);

/// Half-open interval [a, b) with rational endpoints.
struct RInterval {
    Rational a;
    Rational b;

    Rational length() const { return b - a; }
    bool contains(double x) const { return x >= to_double(a) && x < to_double(b); }
    bool operator==(const RInterval& o) const { return a == o.a && b == o.b; }
    std::string str() const;
};

struct SparseFamily {
    std::vector<RInterval> intervals;
    Rational eta{1, 2};
    /// E[i] is a finite union of intervals inside intervals[i].
    std::vector<std::vector<RInterval>> E;
};

struct SparseSpec {
    enum class Rule { Single, Chain, FullTree, Explicit, Random };
    Rule rule = Rule::Chain;
    int depth = 4;
    RInterval root{Rational(0), Rational(1)};
    /// Chain rule: the chain descends toward this point.
    Rational target{0};
    std::vector<RInterval> intervals;
    /// Random rule: each dyadic descendant is kept with probability 1/2.
    std::uint64_t seed = 1;
};

struct SparseBuild {
    std::optional<SparseFamily> family;
    /// Interval witnessing the violation when the spec is rejected.
    std::optional<RInterval> counterexample;
    std::string reason;
};

/// Dyadic intervals of the spec; the Explicit rule returns its list unchanged.
std::vector<RInterval> spec_intervals(const SparseSpec& spec);

/// Builds E_Q = Q minus its maximal proper sub-intervals in the family, then verifies
/// nestedness, |E_Q| >= eta |Q| and pairwise disjointness of the E_Q exactly.
SparseBuild make_sparse_family(const SparseSpec& spec, Rational eta = Rational(1, 2));
SparseBuild make_sparse_family(const std::vector<RInterval>& intervals, Rational eta);

/// sum over Q containing x of (1/|Q|) int_Q |f|.
double sparse_apply(const std::vector<RInterval>& family, const SampledFunction& f, double x);
double sparse_apply(const SparseFamily& family, const SampledFunction& f, double x);

struct SawyerTrial {
    std::string family_id;
    std::string e_spec;
    double p = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    double ratio = 0.0;
    /// ||A_S(1_E u)/u||_{L^p(v)} / ||1_E||_{L^p(v)}.
    double strong_ratio = 0.0;
};

/// Refinement level `level` uses family depth base_depth + depth_step * level on [-1, 1] and
/// samples down to 2^{-(depth + floor_extra)} around the origin.
struct SawyerSpec {
    int level = 0;
    int base_depth = 4;
    int depth_step = 4;
    int floor_extra = 8;
    int subcells = 4;
    int max_dyadic_level = 5;
    int random_unions = 16;
    std::uint64_t seed = 1;
};

struct SawyerReport {
    double sup_ratio = 0.0;
    double strong_sup = 0.0;
    std::vector<SawyerTrial> trials;
    int skipped = 0;
};

/// Empirical sup of ||A_S(1_E u)/u||_{L^{p,inf}(v)} / ||1_E||_{L^{p,1}(v)} over chain and
/// level families and a corpus of sets E.
SawyerReport sawyer_ratio_test(const Weight& u, const Weight& v, double p, const SawyerSpec& spec = {});

/// CSV rows (family_id,E_spec,p,numerator,denominator,ratio) with a header.
std::string sawyer_csv(const SawyerReport& report);

}  // namespace lipbvp
