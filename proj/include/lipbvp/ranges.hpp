#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lipbvp/weight_classes.hpp"
#include "lipbvp/weights.hpp"

namespace lipbvp {

struct DirichletThreshold {
    double p_phi = 1.0;
    bool restricted_endpoint = false;
    /// "closed_form" or "numeric".
    std::string method;
    /// Bisection bracket for numeric thresholds.
    Bracket bracket{1.0, 1.0};
    std::string diagnostic;
};

/// p_Phi = inf{q : Phi(nu) in A_q} and membership of Phi(nu) in A^R_{p_Phi}.
/// Closed form for symbolic pushforwards, numeric bisection otherwise.
DirichletThreshold dirichlet_threshold(const Weight& nu, const ConformalMap& map);

/// Numeric route regardless of symbolic structure: bisection on the A_q estimator and the
/// restricted estimator at `endpoint` (defaults to the bisection midpoint).
DirichletThreshold dirichlet_threshold_numeric(const Weight& nu, const ConformalMap& map,
                                               const IntervalGrid& grid = {},
                                               std::optional<double> endpoint = std::nullopt,
                                               const RestrictedSweep& sweep = {});

struct EndpointFlags {
    bool dirichlet_restricted = false;
    bool h1 = false;
    bool spr_minus = false;
    bool spr_plus = false;
    bool well_defined_minus = false;
};

struct SolvabilityRange {
    double p_phi = 1.0;
    double p_minus = 1.0;
    double p_plus = std::numeric_limits<double>::infinity();
    bool empty = false;
    EndpointFlags flags;

    bool contains(double p) const { return !empty && p > p_minus && p < p_plus; }
};

/// Exponent of |Phi'|^{-p} Phi(nu) for the cone map and nu = |xi|^beta.
double neumann_exponent(double alpha, double beta, double p);

/// R(nu) = {p : |Phi'|^{-p} Phi(nu) in A_p}. Closed form for cone + power, numeric otherwise.
/// Only p_phi, p_minus, p_plus and empty are filled; flags are left for the report.
SolvabilityRange neumann_range(const Weight& nu, const ConformalMap& map);

/// Numeric fallback: scan for a member exponent, then bisect both ends.
SolvabilityRange neumann_range_numeric(const Weight& nu, const ConformalMap& map,
                                       const IntervalGrid& grid = {});

struct H1Verdict {
    bool holds = false;
    bool pushforward_ainf = false;
    /// Set when the cone corollary's stated region and the A_1 test disagree.
    bool corollary_discrepancy = false;
    std::string method;
};

/// A_1 membership of nu o Phi.
H1Verdict h1_condition(const Weight& nu, const ConformalMap& map);

struct SprVerdict {
    bool holds = false;
    bool v_ainf = false;
    bool ratio_finite = false;
    bool branch1 = false;
    bool branch2 = false;
    /// 0 none, 1 or 2.
    int which_branch = 0;
    double ratio_condition_sup = 0.0;
    std::string diagnostic;
};

/// Sufficient condition for (u, v) in S_p^R.
SprVerdict spr_sufficient(const Weight& u, const Weight& v, double p,
                          const IntervalGrid& grid = {-12, 12, {0.0, 1.0 / 3.0}, 4});

struct WellDefinedVerdict {
    bool holds_empirically = false;
    double worst_ratio = 0.0;
    std::vector<double> ratios;
    std::string diagnostic;
};

/// Finite unions of intervals.
using IntervalUnion = std::vector<Interval>;

/// Default sweeps: sets shrinking to 0, sets expanding to infinity, unit windows [n, n+1].
std::vector<std::vector<IntervalUnion>> default_well_defined_sets();

/// int_E |Phi'|/(1+|x|) dx against (Phi(nu)(E))^{1/p_-'} for each E. Each sweep is read as a
/// refinement sequence; the verdict fails on a non-finite ratio, or when a sweep's ratio
/// increases over its last four steps and ends at least 8 times above its first value.
WellDefinedVerdict endpoint_well_defined(const ConformalMap& map, const Weight& nu,
                                         double p_minus,
                                         const std::vector<std::vector<IntervalUnion>>& sweeps);

/// Max relative discrepancy of Phi(nu)^{1-p'} and |Phi'|^{-p'} Phi(nu^{1-p'}) over `grid`.
/// Points where either side is not finite and positive are skipped and counted.
struct DualityCheck {
    double max_rel_error = 0.0;
    int skipped = 0;
};
DualityCheck duality_identity_check(const Weight& nu, const ConformalMap& map, double p,
                                    const std::vector<double>& grid);

/// Dirichlet L^p(nu) guaranteed: Phi(nu) in A_p.
bool dirichlet_guaranteed(const Weight& nu, const ConformalMap& map, double p);
/// Neumann / Regularity L^p(nu) guaranteed: p in R(nu).
bool neumann_guaranteed(const Weight& nu, const ConformalMap& map, double p);

}  // namespace lipbvp
