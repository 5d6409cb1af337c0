#include "lipbvp/ranges.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lipbvp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<double> symbolic_exponent(const Weight& w) {
    if (auto e = w.power_exponent()) return e;
    if (w.kind() == Weight::Kind::PowerLog) return w.beta();
    if (w.kind() == Weight::Kind::LogCap) return 0.0;
    return std::nullopt;
}

bool member(const Weight& w, double p, Restricted r = Restricted::No) {
    try {
        return ap_member_closed_form(w, p, r);
    } catch (const UnsupportedError&) {
        if (r == Restricted::Yes) return apr_member_numeric(w, p);
        return ap_member_numeric(w, p);
    }
}

bool ainf_member(const Weight& w) {
    try {
        return ainf_member_closed_form(w);
    } catch (const UnsupportedError&) {
        for (double q = 2.0; q <= 1024.0; q *= 2.0)
            if (ap_member_numeric(w, q)) return true;
        return false;
    }
}

Weight neumann_weight(const Weight& nu, const ConformalMap& map, double p) {
    return multiply(derivative_modulus(map).pow(-p), pushforward(nu, map));
}

}  // namespace

DirichletThreshold dirichlet_threshold(const Weight& nu, const ConformalMap& map) {
    const Weight w = pushforward(nu, map);
    const auto e = symbolic_exponent(w);
    if (!e) return dirichlet_threshold_numeric(nu, map);
    DirichletThreshold out;
    out.method = "closed_form";
    if (*e <= -1.0) {
        out.p_phi = kInf;
        out.restricted_endpoint = false;
        out.diagnostic = "pushforward is not locally integrable";
        return out;
    }
    out.p_phi = std::max(1.0, *e + 1.0);
    out.bracket = {out.p_phi, out.p_phi};
    out.restricted_endpoint = ap_member_closed_form(w, out.p_phi, Restricted::Yes);
    return out;
}

DirichletThreshold dirichlet_threshold_numeric(const Weight& nu, const ConformalMap& map,
                                               const IntervalGrid& grid,
                                               std::optional<double> endpoint,
                                               const RestrictedSweep& sweep) {
    const Weight w = pushforward(nu, map);
    DirichletThreshold out;
    out.method = "numeric";
    out.bracket = threshold_bisect([&](double q) { return ap_member_numeric(w, q, grid); });
    if (out.bracket.hi == kInf) {
        out.p_phi = kInf;
        out.diagnostic = "divergent A_q estimates at every tested q";
        return out;
    }
    out.p_phi = out.bracket.lo == 1.0 ? 1.0 : 0.5 * (out.bracket.lo + out.bracket.hi);
    const double q = endpoint.value_or(out.p_phi);
    const auto est = apr_constant_estimate(w, q, grid, sweep);
    out.restricted_endpoint = !est.divergent;
    out.diagnostic = est.diagnostic;
    return out;
}

double neumann_exponent(double alpha, double beta, double p) {
    return alpha * beta + (alpha - 1.0) * (1.0 - p);
}

SolvabilityRange neumann_range(const Weight& nu, const ConformalMap& map) {
    const auto b = nu.power_exponent();
    if (!map.cone_alpha || !b) return neumann_range_numeric(nu, map);
    const double a = *map.cone_alpha;
    const double beta = *b;
    SolvabilityRange r;
    r.p_phi = dirichlet_threshold(nu, map).p_phi;
    // e(p) < p - 1  <=>  p > beta + 1;  e(p) > -1  <=>  (a - 1)(p - 1) < a beta + 1.
    double lo = std::max(1.0, beta + 1.0);
    double hi = kInf;
    const double c = a * beta + 1.0;
    if (a == 1.0) {
        if (!(c > 0.0)) r.empty = true;
    } else if (a < 1.0) {
        lo = std::max(lo, 1.0 + c / (a - 1.0));
    } else {
        hi = std::max(1.0, 1.0 + c / (a - 1.0));
    }
    r.p_minus = lo;
    r.p_plus = hi;
    if (lo >= hi) r.empty = true;
    return r;
}

SolvabilityRange neumann_range_numeric(const Weight& nu, const ConformalMap& map,
                                       const IntervalGrid& grid) {
    auto in_range = [&](double p) { return ap_member_numeric(neumann_weight(nu, map, p), p, grid); };
    SolvabilityRange r;
    r.p_phi = dirichlet_threshold_numeric(nu, map, grid).p_phi;
    double seed = 0.0;
    for (double p : {2.0, 1.5, 3.0, 1.25, 4.0, 1.1, 6.0, 8.0, 1.05, 16.0, 32.0, 64.0}) {
        if (in_range(p)) {
            seed = p;
            break;
        }
    }
    if (seed == 0.0) {
        r.empty = true;
        r.p_minus = 1.0;
        r.p_plus = 1.0;
        return r;
    }
    constexpr double tol = 1e-4;
    double lo = 1.0, hi = seed;
    if (in_range(1.0 + tol)) {
        hi = 1.0;
    } else {
        while (hi - lo > tol) {
            const double m = 0.5 * (lo + hi);
            (in_range(m) ? hi : lo) = m;
        }
    }
    r.p_minus = hi;
    lo = seed;
    hi = 2.0 * seed;
    while (in_range(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1024.0) {
            r.p_plus = kInf;
            return r;
        }
    }
    while (hi - lo > tol) {
        const double m = 0.5 * (lo + hi);
        (in_range(m) ? lo : hi) = m;
    }
    r.p_plus = lo;
    return r;
}

H1Verdict h1_condition(const Weight& nu, const ConformalMap& map) {
    H1Verdict v;
    const Weight c = compose(nu, map);
    try {
        v.holds = ap_member_closed_form(c, 1.0);
        v.method = "closed_form";
    } catch (const UnsupportedError&) {
        v.holds = !apr_constant_estimate(c, 1.0).divergent;
        v.method = "numeric";
    }
    v.pushforward_ainf = ainf_member(pushforward(nu, map));
    if (map.cone_alpha && *map.cone_alpha > 1.0) {
        if (auto b = nu.power_exponent()) {
            const double a = *map.cone_alpha;
            const bool corollary_region = *b > -1.0 / a && *b <= 1.0;
            v.corollary_discrepancy = corollary_region != v.holds;
        }
    }
    return v;
}

SprVerdict spr_sufficient(const Weight& u, const Weight& v, double p, const IntervalGrid& grid) {
    if (!(p > 1.0)) throw DomainError("spr_sufficient needs p > 1");
    const double pp = p / (p - 1.0);
    SprVerdict out;
    const auto a = u.power_exponent();
    const auto b = v.power_exponent();
    const Weight ratio_w = multiply(v, u.pow(-1.0));
    if (a && b) {
        out.v_ainf = *b > -1.0;
        out.ratio_finite = *a > -1.0 && *b > -1.0 && *b - *a > -1.0;
        const double g = *b - *a;
        out.branch1 = ap_base_member_power(g, *a, p, Restricted::No) &&
                      ap_base_member_power(*a, g, pp, Restricted::Yes);
        out.branch2 = ap_base_member_power(g, *a, p, Restricted::Yes) &&
                      ap_base_member_power(*a, g, pp, Restricted::No);
    } else {
        out.v_ainf = ainf_member(v);
        const RestrictedSweep sweep;
        out.branch1 = !ap_u_constant_estimate(ratio_w, u, p, grid).divergent &&
                      !apr_constant_estimate(u, pp, grid, sweep, ratio_w).divergent;
        out.branch2 = !apr_constant_estimate(ratio_w, p, grid, sweep, u).divergent &&
                      !ap_u_constant_estimate(u, ratio_w, pp, grid).divergent;
    }
    // Numeric sup of u(Q)(v/u)(Q) / (|Q| v(Q)) over the grid.
    double sup = 0.0;
    bool finite = true;
    std::vector<double> run;
    for (int j = grid.j_max; j >= grid.j_min && finite; --j) {
        for (const Interval& q : grid.level(j)) {
            const auto lu = log_integral(u, q.a, q.b);
            const auto lr = log_integral(ratio_w, q.a, q.b);
            const auto lv = log_integral(v, q.a, q.b);
            if (!lu.finite || !lr.finite || !lv.finite) {
                finite = false;
                break;
            }
            sup = std::max(sup, std::exp(lu.log_value + lr.log_value - std::log(q.length()) -
                                         lv.log_value));
        }
        run.push_back(sup);
    }
    const std::size_t n = run.size();
    if (finite && n >= 3 && run[n - 1] > 2 * run[n - 2] && run[n - 2] > 2 * run[n - 3])
        finite = false;
    out.ratio_condition_sup = finite ? sup : kInf;
    if (!(a && b)) out.ratio_finite = finite;
    if (out.ratio_finite && !finite) out.diagnostic = "numeric ratio sup diverged";
    out.holds = out.v_ainf && out.ratio_finite && finite && (out.branch1 || out.branch2);
    out.which_branch = out.branch1 ? 1 : (out.branch2 ? 2 : 0);
    if (!out.holds && out.diagnostic.empty()) {
        std::ostringstream os;
        os << "v_ainf=" << out.v_ainf << " ratio_finite=" << out.ratio_finite
           << " branch1=" << out.branch1 << " branch2=" << out.branch2;
        out.diagnostic = os.str();
    }
    return out;
}

std::vector<std::vector<IntervalUnion>> default_well_defined_sets() {
    std::vector<std::vector<IntervalUnion>> sweeps(3);
    for (int k = 0; k <= 20; ++k) {
        const double r = std::ldexp(1.0, -k);
        sweeps[0].push_back({{-r, r}});
    }
    for (int k = 0; k <= 20; ++k) {
        const double r = std::ldexp(1.0, k);
        sweeps[1].push_back({{-r, r}});
    }
    for (int n = 1; n <= 10; ++n) sweeps[2].push_back({{double(n), double(n + 1)}});
    return sweeps;
}

WellDefinedVerdict endpoint_well_defined(const ConformalMap& map, const Weight& nu,
                                         double p_minus,
                                         const std::vector<std::vector<IntervalUnion>>& sweeps) {
    if (!(p_minus > 1.0)) throw DomainError("endpoint_well_defined needs p_minus > 1");
    if (sweeps.empty()) throw DomainError("endpoint_well_defined needs test sets");
    const double pp = p_minus / (p_minus - 1.0);
    const Weight left_w = multiply(
        derivative_modulus(map),
        Weight::custom([](double x) { return 1.0 / (1.0 + std::abs(x)); }, {}, true, "1/(1+|x|)"));
    const Weight mu = pushforward(nu, map);
    WellDefinedVerdict out;
    out.holds_empirically = true;
    for (const auto& sweep : sweeps) {
        std::vector<double> seq;
        for (const IntervalUnion& e : sweep) {
            double left = 0.0, right = 0.0;
            for (const Interval& i : e) {
                left += integral(left_w, i.a, i.b);
                right += integral(mu, i.a, i.b);
            }
            double ratio;
            if (right == 0.0) {
                ratio = left > 0.0 ? kInf : 0.0;
            } else {
                ratio = left / std::pow(right, 1.0 / pp);
            }
            if (!std::isfinite(ratio)) {
                out.holds_empirically = false;
                out.diagnostic = "non-finite ratio";
            }
            seq.push_back(ratio);
            out.ratios.push_back(ratio);
            out.worst_ratio = std::max(out.worst_ratio, ratio);
        }
        const std::size_t n = seq.size();
        if (n >= 5 && seq.front() > 0.0) {
            bool increasing = true;
            for (std::size_t i = n - 4; i < n; ++i) increasing = increasing && seq[i] > seq[i - 1];
            if (increasing && seq.back() >= 8.0 * seq.front()) {
                out.holds_empirically = false;
                out.diagnostic = "ratio grows along a sweep";
            }
        }
    }
    return out;
}

DualityCheck duality_identity_check(const Weight& nu, const ConformalMap& map, double p,
                                    const std::vector<double>& grid) {
    if (!(p > 1.0)) throw DomainError("duality check needs p > 1");
    const double pp = p / (p - 1.0);
    const Weight lhs = pushforward(nu, map).pow(1.0 - pp);
    const Weight rhs =
        multiply(derivative_modulus(map).pow(-pp), pushforward(nu.pow(1.0 - pp), map));
    DualityCheck out;
    for (double x : grid) {
        const double l = lhs(x);
        const double r = rhs(x);
        if (!(std::isfinite(l) && std::isfinite(r) && l > 0.0 && r > 0.0)) {
            ++out.skipped;
            continue;
        }
        out.max_rel_error = std::max(out.max_rel_error, std::abs(l - r) / std::abs(l));
    }
    return out;
}

bool dirichlet_guaranteed(const Weight& nu, const ConformalMap& map, double p) {
    return member(pushforward(nu, map), p);
}

bool neumann_guaranteed(const Weight& nu, const ConformalMap& map, double p) {
    return neumann_range(nu, map).contains(p);
}

}  // namespace lipbvp
