#include "lipbvp/weight_classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lipbvp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SymbolicForm {
    enum class Type { Power, PowerLog, LogCap } type;
    double beta = 0.0;
};

SymbolicForm symbolic_form(const Weight& w) {
    if (auto e = w.power_exponent()) return {SymbolicForm::Type::Power, *e};
    if (w.kind() == Weight::Kind::PowerLog) return {SymbolicForm::Type::PowerLog, w.beta()};
    if (w.kind() == Weight::Kind::LogCap) return {SymbolicForm::Type::LogCap, 0.0};
    throw UnsupportedError("closed-form class test needs a power, power-log or log-cap weight, got " +
                           w.describe());
}

bool growth_flag(const std::vector<double>& run) {
    const std::size_t n = run.size();
    if (n < 3) return false;
    return run[n - 1] > 2.0 * run[n - 2] && run[n - 2] > 2.0 * run[n - 3];
}

}  // namespace

bool ap_member_closed_form(const Weight& w, double p, Restricted restricted) {
    if (!(p >= 1.0)) throw DomainError("class exponent p must be >= 1");
    const SymbolicForm f = symbolic_form(w);
    const double b = f.beta;
    switch (f.type) {
        case SymbolicForm::Type::Power:
            if (p == 1.0) return b > -1.0 && b <= 0.0;
            return b > -1.0 && (restricted == Restricted::Yes ? b <= p - 1.0 : b < p - 1.0);
        case SymbolicForm::Type::PowerLog:
            // The decaying log factor breaks the endpoint in both the strong and restricted class.
            if (p == 1.0) return b > -1.0 && b < 0.0;
            return b > -1.0 && b < p - 1.0;
        case SymbolicForm::Type::LogCap:
            return true;
    }
    return false;
}

bool ainf_member_closed_form(const Weight& w) {
    const SymbolicForm f = symbolic_form(w);
    return f.type == SymbolicForm::Type::LogCap || f.beta > -1.0;
}

bool ap_base_member_power(double gamma_exp, double delta_exp, double p, Restricted restricted) {
    if (!(p > 1.0)) throw DomainError("A_p(u) needs p > 1");
    if (!std::isfinite(gamma_exp) || !std::isfinite(delta_exp))
        throw DomainError("exponents must be finite");
    const double pp = p / (p - 1.0);
    const double last = delta_exp + gamma_exp - pp * gamma_exp;
    return delta_exp > -1.0 && delta_exp + gamma_exp > -1.0 &&
           (restricted == Restricted::Yes ? last >= -1.0 : last > -1.0);
}

std::vector<Interval> IntervalGrid::level(int j) const {
    std::vector<Interval> out;
    const double len = std::ldexp(1.0, j);
    for (double s : shifts)
        for (int k = -window; k < window; ++k) out.push_back({(k + s) * len, (k + 1 + s) * len});
    return out;
}

namespace {

ClassEstimate sweep_levels(const IntervalGrid& grid,
                           const std::function<double(const Interval&, std::string&)>& functional) {
    ClassEstimate est;
    double sup = 0.0;
    for (int j = grid.j_max; j >= grid.j_min; --j) {
        for (const Interval& q : grid.level(j)) {
            std::string diag;
            const double v = functional(q, diag);
            if (!std::isfinite(v)) {
                est.divergent = true;
                est.value = kInf;
                std::ostringstream os;
                os << "non-integrable average on [" << q.a << "," << q.b << "]";
                if (!diag.empty()) os << ": " << diag;
                est.diagnostic = os.str();
                est.running_sup.push_back(kInf);
                return est;
            }
            sup = std::max(sup, v);
        }
        est.running_sup.push_back(sup);
    }
    est.value = sup;
    if (growth_flag(est.running_sup)) {
        est.divergent = true;
        est.diagnostic = "running sup doubled across the last two refinement levels";
    }
    return est;
}

}  // namespace

ClassEstimate ap_constant_estimate(const Weight& w, double p, const IntervalGrid& grid) {
    if (!(p > 1.0)) throw DomainError("ap_constant_estimate needs p > 1");
    const double dual = -1.0 / (p - 1.0);
    return sweep_levels(grid, [&](const Interval& q, std::string& diag) {
        const auto lw = log_integral(w, q.a, q.b, 1.0);
        if (!lw.finite) {
            diag = "weight";
            return kInf;
        }
        const auto ld = log_integral(w, q.a, q.b, dual);
        if (!ld.finite) {
            diag = "dual weight";
            return kInf;
        }
        const double ll = std::log(q.length());
        return std::exp((lw.log_value - ll) + (p - 1.0) * (ld.log_value - ll));
    });
}

ClassEstimate ap_u_constant_estimate(const Weight& w, const Weight& u, double p,
                                     const IntervalGrid& grid) {
    if (!(p > 1.0)) throw DomainError("ap_u_constant_estimate needs p > 1");
    const double pp = p / (p - 1.0);
    const Weight wu = multiply(w, u);
    const Weight du = multiply(w.pow(1.0 - pp), u);
    return sweep_levels(grid, [&](const Interval& q, std::string& diag) {
        const auto lu = log_integral(u, q.a, q.b);
        const auto lwu = log_integral(wu, q.a, q.b);
        const auto ldu = log_integral(du, q.a, q.b);
        if (!lu.finite || !lwu.finite || !ldu.finite) {
            diag = !lu.finite ? "base weight" : (!lwu.finite ? "weight" : "dual weight");
            return kInf;
        }
        return std::exp(lwu.log_value / p + ldu.log_value / pp - lu.log_value);
    });
}

ClassEstimate apr_constant_estimate(const Weight& w, double p, const IntervalGrid& grid,
                                    const RestrictedSweep& sweep, const Weight& u) {
    if (!(p >= 1.0)) throw DomainError("apr_constant_estimate needs p >= 1");
    if (sweep.depths.empty()) throw DomainError("restricted sweep needs depth levels");
    const Weight wu = multiply(w, u);
    auto sing = wu.singular_points();
    {
        auto su = u.singular_points();
        sing.insert(sing.end(), su.begin(), su.end());
        std::sort(sing.begin(), sing.end());
        sing.erase(std::unique(sing.begin(), sing.end()), sing.end());
    }
    const int max_depth = sweep.depths.back();
    std::vector<int> ks;
    for (int k = 1; k <= 8; ++k) ks.push_back(k);
    for (int k = 16; k < max_depth; k *= 2) ks.push_back(k);
    for (int d : sweep.depths)
        if (d > 8) ks.push_back(d);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::vector<int> regular_ks;
    for (int k = 1; k <= std::min(8, sweep.regular_depth); ++k) regular_ks.push_back(k);
    for (int k : {12, 16, 24, 32, 40})
        if (k <= sweep.regular_depth) regular_ks.push_back(k);

    const std::size_t nl = sweep.depths.size();
    std::vector<double> level_sup(nl, 0.0);
    ClassEstimate est;
    auto fail = [&](const Interval& q, const char* what) {
        est.divergent = true;
        est.value = kInf;
        std::ostringstream os;
        os << what << " not integrable on [" << q.a << "," << q.b << "]";
        est.diagnostic = os.str();
        est.running_sup.assign(nl, kInf);
        return est;
    };
    auto value = [&](double lu_e, double lwu_e, double lu_q, double lwu_q) {
        return (lu_e - lu_q) + (lwu_q - lwu_e) / p;
    };
    for (int j = grid.j_max; j >= grid.j_min; --j) {
        for (const Interval& q : grid.level(j)) {
            const auto lu_q = log_integral(u, q.a, q.b);
            const auto lwu_q = log_integral(wu, q.a, q.b);
            if (!lu_q.finite) return fail(q, "base weight");
            if (!lwu_q.finite) return fail(q, "weight");
            const double lq = std::log(q.length());
            double common = -kInf;
            auto consider_regular = [&](double a, double b) {
                const auto le = log_integral(u, a, b);
                const auto lwe = log_integral(wu, a, b);
                if (!le.finite || !lwe.finite) return false;
                common = std::max(common, value(le.log_value, lwe.log_value, lu_q.log_value,
                                                lwu_q.log_value));
                return true;
            };
            // Anchored at the ends of Q.
            for (int k : regular_ks) {
                const double eps = std::ldexp(q.length(), -k);
                if (!std::binary_search(sing.begin(), sing.end(), q.a))
                    if (!consider_regular(q.a, q.a + eps)) return fail(q, "weight");
                if (!std::binary_search(sing.begin(), sing.end(), q.b))
                    if (!consider_regular(q.b - eps, q.b)) return fail(q, "weight");
            }
            // Greedy descent toward the child with the larger functional.
            {
                Interval e = q;
                for (int d = 0; d < sweep.greedy_depth; ++d) {
                    const double m = 0.5 * (e.a + e.b);
                    double best = -kInf;
                    Interval pick = e;
                    for (Interval c : {Interval{e.a, m}, Interval{m, e.b}}) {
                        const auto le = log_integral(u, c.a, c.b);
                        const auto lwe = log_integral(wu, c.a, c.b);
                        if (!le.finite || !lwe.finite) return fail(q, "weight");
                        const double v =
                            value(le.log_value, lwe.log_value, lu_q.log_value, lwu_q.log_value);
                        if (v > best) {
                            best = v;
                            pick = c;
                        }
                    }
                    common = std::max(common, best);
                    e = pick;
                }
            }
            // Anchored at singular points inside Q, possibly far below double resolution.
            std::vector<double> per_k(ks.size(), -kInf);
            for (double s : sing) {
                if (s < q.a || s > q.b) continue;
                const bool origin = s == 0.0;
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    const int k = ks[i];
                    if (!origin && k > sweep.regular_depth) continue;
                    const double log_eps = lq - k * std::log(2.0);
                    for (int side : {-1, 1}) {
                        const double edge = side > 0 ? q.b - s : s - q.a;
                        if (!(edge > 0.0) || log_eps > std::log(edge)) continue;
                        quad::LogIntegral le, lwe;
                        if (origin) {
                            le = log_integral_origin(u, log_eps, 1.0, side);
                            lwe = log_integral_origin(wu, log_eps, 1.0, side);
                        } else {
                            const double eps = std::exp(log_eps);
                            const double a = side > 0 ? s : s - eps;
                            const double b = side > 0 ? s + eps : s;
                            le = log_integral(u, a, b);
                            lwe = log_integral(wu, a, b);
                        }
                        if (!le.finite || !lwe.finite) return fail(q, "weight");
                        per_k[i] = std::max(per_k[i], value(le.log_value, lwe.log_value,
                                                            lu_q.log_value, lwu_q.log_value));
                    }
                }
            }
            for (std::size_t m = 0; m < nl; ++m) {
                double best = common;
                for (std::size_t i = 0; i < ks.size(); ++i)
                    if (ks[i] <= sweep.depths[m]) best = std::max(best, per_k[i]);
                level_sup[m] = std::max(level_sup[m], std::exp(best));
            }
        }
    }
    est.running_sup = level_sup;
    est.value = level_sup.back();
    if (growth_flag(level_sup)) {
        est.divergent = true;
        est.diagnostic = "restricted functional doubled across the last two depth levels";
    }
    return est;
}

bool ap_member_numeric(const Weight& w, double p, const IntervalGrid& grid) {
    if (p == 1.0) return !apr_constant_estimate(w, 1.0, grid).divergent;
    return !ap_constant_estimate(w, p, grid).divergent;
}

bool apr_member_numeric(const Weight& w, double p, const IntervalGrid& grid,
                        const RestrictedSweep& sweep) {
    return !apr_constant_estimate(w, p, grid, sweep).divergent;
}

Bracket threshold_bisect(const std::function<bool(double)>& pred, double q_max, double tol) {
    double lo = 1.0;
    double hi = 2.0;
    while (!pred(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > q_max) return {lo, kInf};
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

}  // namespace lipbvp
