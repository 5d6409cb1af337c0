#pragma once

#include <string>
#include <vector>

#include "lipbvp/weights.hpp"

namespace lipbvp {

enum class Restricted { No, Yes };

/// Exact membership of a symbolic weight in A_p (p >= 1) or A_p^R by exponent comparison.
/// Handles powers (and products of powers), power-log and log-cap weights.
/// Throws UnsupportedError for other weights.
bool ap_member_closed_form(const Weight& w, double p, Restricted restricted = Restricted::No);

/// A_infinity membership for symbolic weights.
bool ainf_member_closed_form(const Weight& w);

/// |x|^gamma in A_p(|x|^delta): delta > -1, delta + gamma > -1, delta + gamma - p' gamma > -1
/// (last inequality non-strict when restricted).
bool ap_base_member_power(double gamma_exp, double delta_exp, double p,
                          Restricted restricted = Restricted::No);

struct Interval {
    double a;
    double b;
    double length() const { return b - a; }
};

/// Dyadic intervals [(k+s)2^j, (k+1+s)2^j] for j in [j_min, j_max], s in shifts and
/// k in [-window, window).
struct IntervalGrid {
    int j_min = -20;
    int j_max = 20;
    std::vector<double> shifts{0.0, 1.0 / 3.0};
    int window = 4;

    std::vector<Interval> level(int j) const;
};

struct ClassEstimate {
    double value = 0.0;
    bool divergent = false;
    std::string diagnostic;
    /// Running sup after each refinement level.
    std::vector<double> running_sup;
};

/// sup over grid intervals of (avg w)(avg w^{-1/(p-1)})^{p-1}. Levels are visited from
/// coarse to fine; divergence is flagged on a non-integrable average or when the running
/// sup doubles across each of the last two levels.
ClassEstimate ap_constant_estimate(const Weight& w, double p, const IntervalGrid& grid = {});

/// A_p(u) constant: sup (wu(Q))^{1/p} (w^{1-p'}u(Q))^{1/p'} / u(Q).
ClassEstimate ap_u_constant_estimate(const Weight& w, const Weight& u, double p,
                                     const IntervalGrid& grid = {});

/// Depth schedule for the restricted-class estimator: level m allows subsets E of Q with
/// |E| >= 2^{-depths[m]}|Q| near singular points of the weight.
struct RestrictedSweep {
    std::vector<int> depths{4, 32, 256, 2048};
    int greedy_depth = 12;
    int regular_depth = 40;
};

/// sup over Q and E subset Q of (u(E)/u(Q)) (wu(Q)/wu(E))^{1/p}; with u = 1 this is the
/// A_p^R constant (and the A_1 constant when p = 1). Candidate sets E are anchored at the
/// ends of Q and at singular points inside Q, plus a greedy descent toward small averages.
/// The running sup is recorded per depth level; doubling across each of the last two
/// levels flags divergence.
ClassEstimate apr_constant_estimate(const Weight& w, double p, const IntervalGrid& grid = {},
                                    const RestrictedSweep& sweep = {},
                                    const Weight& u = Weight::one());

/// Numeric A_p (p > 1) or A_1 (p == 1) membership from the estimators above.
bool ap_member_numeric(const Weight& w, double p, const IntervalGrid& grid = {});
bool apr_member_numeric(const Weight& w, double p, const IntervalGrid& grid = {},
                        const RestrictedSweep& sweep = {});

/// Bisection for inf{q > 1 : pred(q)} assuming monotonicity; returns {lo, hi} bracket with
/// hi - lo <= tol, hi = +inf when pred fails up to q_max.
struct Bracket {
    double lo;
    double hi;
};
Bracket threshold_bisect(const std::function<bool(double)>& pred, double q_max = 1024.0,
                         double tol = 1e-4);

}  // namespace lipbvp
