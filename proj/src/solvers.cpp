#include "lipbvp/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lipbvp/lorentz.hpp"
#include "lipbvp/maximal.hpp"

namespace lipbvp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double curve_density(const Weight& nu, const GraphDomain& d, double t) {
    return nu.on_curve(d.eta(t)) * d.arc_density(t);
}

double curve_mass(const Weight& nu, const GraphDomain& d, double a, double b) {
    if (!(b > a)) return 0.0;
    auto sing = nu.singular_points();
    const auto r = integrate_against_singular(BoundaryFunction::indicator(a, b),
                                              [&](double t) { return curve_density(nu, d, t); },
                                              d.kinks(), sing);
    return r.converged ? r.value : kInf;
}

std::pair<double, double> data_span(const BoundaryFunction& f) {
    if (auto s = f.support()) return *s;
    return {-4.0, 4.0};
}

/// Boundary parameters for the maximal-function norm: a uniform grid over a window around
/// the data plus points clustering at the origin.
std::vector<double> sample_parameters(const BoundaryFunction& f, int n) {
    const auto [a, b] = data_span(f);
    const double T = 2.0 * std::max({std::abs(a), std::abs(b), 1.0});
    std::vector<double> t;
    for (int k = 0; k <= n; ++k) t.push_back(-T + 2.0 * T * k / n);
    for (int j = 1; j <= 8; ++j) {
        const double r = T * std::pow(10.0, -0.5 * j);
        t.push_back(r);
        t.push_back(-r);
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

/// Masses of the cells between midpoints of consecutive parameters.
std::vector<double> cell_masses(const std::vector<double>& t, const Weight& nu, const GraphDomain& d) {
    std::vector<double> m(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double lo = i == 0 ? t[0] - 0.5 * (t[1] - t[0]) : 0.5 * (t[i - 1] + t[i]);
        const double hi = i + 1 == t.size() ? t[i] + 0.5 * (t[i] - t[i - 1]) : 0.5 * (t[i] + t[i + 1]);
        m[i] = curve_mass(nu, d, lo, hi);
    }
    return m;
}

/// Lorentz norm of |h| (a function of the parameter) by sampling 4096 cells over `span`.
double sampled_lorentz(const std::function<double(double)>& h, std::pair<double, double> span,
                       const Weight& nu, const GraphDomain& d, double p, LorentzQ q) {
    constexpr int n = 4096;
    std::vector<double> vals(n), mass(n);
    const double w = (span.second - span.first) / n;
    for (int i = 0; i < n; ++i) {
        const double t = span.first + (i + 0.5) * w;
        vals[i] = std::abs(h(t));
        mass[i] = curve_density(nu, d, t) * w;
    }
    return lorentz_norm(vals, mass, p, q);
}

double datum_norm(const CurveFunction& g, const ConformalMap& map, const Weight& nu, double p,
                  Space space) {
    if (space == Space::Lorentz) {
        if (g.param.kind() == BoundaryFunction::Kind::PiecewiseConstant)
            return curve_lorentz_norm(g, map.domain, nu, p, false);
        return sampled_lorentz(g.param, data_span(g.param), nu, map.domain, p, LorentzQ::One);
    }
    return curve_lp_norm(g, map.domain, nu, p);
}

double derivative_norm(const CurveFunction& g, const ConformalMap& map, const Weight& nu, double p,
                       Space space) {
    const GraphDomain& d = map.domain;
    auto mod = [&](double t) { return std::abs(g.derivative(d, t)); };
    if (space == Space::Lorentz)
        return sampled_lorentz(mod, data_span(g.param), nu, d, p, LorentzQ::One);
    const auto r = integrate_structure(
        g.param.derivative(), [&](double t) { return std::pow(mod(t), p) * curve_density(nu, d, t); },
        d.kinks(), nu.singular_points());
    return r.converged ? std::pow(r.value, 1.0 / p) : kInf;
}

void finish_ratio(Diagnostics& d) {
    if (d.datum_norm == 0.0 && d.nt_max_norm == 0.0) {
        d.status = "degenerate";
        d.ratio = kNaN;
    } else if (d.datum_norm == 0.0) {
        d.ratio = kInf;
    } else {
        d.ratio = d.nt_max_norm / d.datum_norm;
    }
}

/// Sampled non-tangential maximal norm of |field| on the curve.
void nt_norm(BVPSolution& s, const Weight& nu, const BoundaryFunction& param,
             const std::function<double(cplx)>& field, double p, Space space, const SolveOptions& opt) {
    const GraphDomain& dom = s.map.domain;
    const double L = dom.lipschitz();
    const double cap = L == 0.0 ? std::numbers::pi / 2 : std::atan(1.0 / L);
    NTCone cone;
    cone.aperture = std::min(opt.aperture, 0.5 * cap);
    cone.r_min = opt.cone_r_min;
    cone.r_max = opt.cone_r_max;
    cone.levels_per_decade = opt.levels_per_decade;
    cone.rays = opt.rays;
    const auto t = sample_parameters(param, opt.boundary_points);
    std::vector<cplx> xi;
    for (double tk : t) xi.push_back(dom.eta(tk));
    const NTMaximal m = nt_maximal(field, xi, cone, L);
    const auto mass = cell_masses(t, nu, dom);
    s.diagnostics.failed_samples += m.failures;
    s.diagnostics.corpus_size = static_cast<int>(t.size());
    switch (space) {
        case Space::Lp:
            s.diagnostics.nt_max_norm = lebesgue_norm(m.values, mass, p);
            break;
        case Space::Lorentz:
            s.diagnostics.nt_max_norm = lorentz_norm(m.values, mass, p, LorentzQ::Infinity);
            break;
        case Space::H1:
            s.diagnostics.nt_max_norm = lebesgue_norm(m.values, mass, 1.0);
            break;
    }
}

/// Parameters at distance >= 5% of the span from breakpoints and kinks.
std::vector<double> continuity_points(const BoundaryFunction& f, const GraphDomain& d) {
    const auto [a, b] = data_span(f);
    const double gap = 0.05 * (b - a);
    std::vector<double> avoid = f.breakpoints();
    avoid.insert(avoid.end(), d.kinks().begin(), d.kinks().end());
    std::vector<double> out;
    for (int k = 1; k <= 15; ++k) {
        const double t = a + (b - a) * k / 16.0;
        bool ok = true;
        for (double s : avoid) ok = ok && std::abs(t - s) >= gap;
        if (ok) out.push_back(t);
    }
    return out;
}

BVPSolution base_solution(const ConformalMap& map, Problem problem, Space space, double p) {
    BVPSolution s;
    s.map = map;
    s.problem = problem;
    s.space = space;
    s.p = p;
    return s;
}

}  // namespace

std::string to_string(Problem p) {
    switch (p) {
        case Problem::Dirichlet:
            return "dirichlet";
        case Problem::Neumann:
            return "neumann";
        case Problem::Regularity:
            return "regularity";
    }
    return "";
}

std::string to_string(Space s) {
    switch (s) {
        case Space::Lp:
            return "lp";
        case Space::Lorentz:
            return "lorentz";
        case Space::H1:
            return "h1";
    }
    return "";
}

BoundaryFunction transfer_dirichlet_datum(const CurveFunction& g, const ConformalMap& map) {
    const BoundaryFunction& f = g.param;
    if (f.kind() == BoundaryFunction::Kind::Constant) return f;
    if (map.cone_alpha && *map.cone_alpha == 1.0) return f;
    if (f.kind() == BoundaryFunction::Kind::PiecewiseConstant) {
        std::vector<double> edges;
        for (double t : f.nodes()) edges.push_back(map.phi1_inverse(t));
        return BoundaryFunction::piecewise_constant(edges, f.values());
    }
    return weak_derivative_pullback(g, map);
}

BoundaryFunction transfer_neumann_datum(const CurveFunction& g, const ConformalMap& map) {
    const BoundaryFunction& f = g.param;
    if (map.cone_alpha && *map.cone_alpha == 1.0) return f;
    std::optional<std::pair<double, double>> support;
    if (auto s = f.support())
        support = std::make_pair(map.phi1_inverse(s->first), map.phi1_inverse(s->second));
    std::vector<double> bps;
    for (double t : f.breakpoints()) bps.push_back(map.phi1_inverse(t));
    auto phi1 = map.phi1;
    auto m = map;
    return BoundaryFunction::generic(
        [f, phi1, m](double x) { return f(phi1(x)) * m.boundary_derivative_modulus(x); }, {}, support,
        bps, map.singular_points, "T_N(" + f.label() + ")");
}

BoundaryFunction AtomicDatum::sum() const {
    BoundaryFunction s = BoundaryFunction::zero();
    for (std::size_t j = 0; j < atoms.size(); ++j) s = s.plus(atoms[j].values.scaled(coefficients[j]));
    return s;
}

double AtomicDatum::coefficient_norm() const {
    double acc = 0.0;
    for (double c : coefficients) acc += std::abs(c);
    return acc;
}

AtomicDatum::Atom make_atom(double center, double radius, const Weight& nu, const GraphDomain& domain) {
    if (!(radius > 0.0)) throw DomainError("atom radius must be positive");
    const double m1 = curve_mass(nu, domain, center - radius, center);
    const double m2 = curve_mass(nu, domain, center, center + radius);
    if (!(m1 > 0.0 && m2 > 0.0 && std::isfinite(m1 + m2)))
        throw DomainError("atom halves need finite positive mass");
    const double lam = std::min(m1, m2) / (m1 + m2);
    AtomicDatum::Atom a;
    a.center = center;
    a.radius = radius;
    a.values = BoundaryFunction::piecewise_constant({center - radius, center, center + radius},
                                                    {lam / m1, -lam / m2});
    return a;
}

AtomCheck check_atom(const AtomicDatum::Atom& atom, const Weight& nu, const GraphDomain& domain) {
    AtomCheck c;
    const auto s = atom.values.support();
    c.support_ok = !s || (s->first >= atom.center - atom.radius && s->second <= atom.center + atom.radius);
    const double ball = curve_mass(nu, domain, atom.center - atom.radius, atom.center + atom.radius);
    double sup = 0.0;
    if (atom.values.kind() == BoundaryFunction::Kind::PiecewiseConstant) {
        for (double v : atom.values.values()) sup = std::max(sup, std::abs(v));
        const auto& e = atom.values.nodes();
        for (std::size_t i = 0; i + 1 < e.size(); ++i)
            c.mean += atom.values.values()[i] * curve_mass(nu, domain, e[i], e[i + 1]);
    } else {
        const auto r = integrate_against_singular(atom.values,
                                                  [&](double t) { return curve_density(nu, domain, t); },
                                                  domain.kinks(), nu.singular_points());
        c.mean = r.value;
        for (int k = 0; k <= 1000; ++k) {
            const double t = atom.center - atom.radius + 2.0 * atom.radius * k / 1000.0;
            sup = std::max(sup, std::abs(atom.values(t)));
        }
    }
    c.bound_ok = sup <= (1.0 + 1e-12) / ball;
    return c;
}

double BVPSolution::value(cplx z) const {
    const cplx w = map.inverse(z);
    return field.value(w.real(), w.imag());
}

Vec2 BVPSolution::gradient(cplx z) const {
    const cplx w = map.inverse(z);
    const Vec2 g = field.gradient(w.real(), w.imag());
    const cplx G = cplx(g[0], -g[1]) / map.derivative(w);
    return {G.real(), -G.imag()};
}

BVPSolution solve_dirichlet(const ConformalMap& map, const Weight& nu, const CurveFunction& g, double p,
                            Space space, const SolveOptions& opt) {
    if (space == Space::H1) throw DomainError("Dirichlet solves use Lp or Lorentz spaces");
    BVPSolution s = base_solution(map, Problem::Dirichlet, space, p);
    s.half_plane_datum = transfer_dirichlet_datum(g, map);
    if (!s.half_plane_datum.certificates().poisson_finite())
        throw DomainError("datum is outside the class int |g o Phi|/(1+x^2) < inf");
    s.field = poisson_field(s.half_plane_datum);
    s.datum_label = g.param.label();
    auto& d = s.diagnostics;
    if (space == Space::Lp) {
        d.guaranteed = dirichlet_guaranteed(nu, map, p);
    } else {
        const auto th = dirichlet_threshold(nu, map);
        d.guaranteed = (std::abs(p - th.p_phi) <= 1e-12 && th.restricted_endpoint) ||
                       dirichlet_guaranteed(nu, map, p);
    }
    d.verdict = d.guaranteed ? "guaranteed" : "outside guaranteed range";
    if (!opt.diagnostics) return s;
    nt_norm(s, nu, g.param, [&s](cplx z) { return s.value(z); }, p, space, opt);
    d.datum_norm = datum_norm(g, map, nu, p, space);
    finish_ratio(d);
    for (double t : continuity_points(g.param, map.domain)) {
        const cplx z = map.domain.eta(t) + cplx(0.0, opt.boundary_offset);
        d.boundary_error = std::max(d.boundary_error, std::abs(s.value(z) - g.param(t)));
    }
    return s;
}

namespace {

std::string neumann_verdict(const ConformalMap& map, const Weight& nu, double p, Space space,
                            const SolveOptions& opt, bool& guaranteed) {
    if (space == Space::Lp) {
        guaranteed = neumann_guaranteed(nu, map, p);
        return guaranteed ? "guaranteed" : "outside guaranteed range";
    }
    const auto r = neumann_range(nu, map);
    const bool at_plus = std::isfinite(r.p_plus) && std::abs(p - r.p_plus) <= 1e-9;
    const bool at_minus = std::abs(p - r.p_minus) <= 1e-9 && r.p_minus > 1.0;
    if (!at_plus && !at_minus) {
        guaranteed = false;
        return "Lorentz solves are defined at the endpoints p_- and p_+ only";
    }
    const auto spr = spr_sufficient(derivative_modulus(map), pushforward(nu, map), p);
    if (at_plus) {
        guaranteed = spr.holds;
        return guaranteed ? "guaranteed" : "outside guaranteed range";
    }
    if (!opt.allow_p_minus) throw DomainError("Lorentz solve at p_- requires explicit opt-in");
    const auto wd = endpoint_well_defined(map, nu, p, default_well_defined_sets());
    guaranteed = spr.holds && wd.holds_empirically;
    return guaranteed ? "guaranteed (empirical well-definedness)" : "outside guaranteed range";
}

void neumann_boundary_error(BVPSolution& s, const BoundaryFunction& param, const SolveOptions& opt) {
    const GraphDomain& dom = s.map.domain;
    for (double t : continuity_points(param, dom)) {
        const cplx z = dom.eta(t) + cplx(0.0, opt.boundary_offset);
        const Vec2 gv = s.gradient(z);
        const double gp = dom.gamma_prime(t);
        const double nn = std::hypot(gp, 1.0);
        const double normal = (gv[0] * gp - gv[1]) / nn;
        s.diagnostics.boundary_error = std::max(s.diagnostics.boundary_error, std::abs(normal - param(t)));
    }
}

}  // namespace

BVPSolution solve_neumann(const ConformalMap& map, const Weight& nu, const CurveFunction& g, double p,
                          Space space, const SolveOptions& opt) {
    if (space == Space::H1) throw DomainError("use solve_neumann_atomic for H1 data");
    BVPSolution s = base_solution(map, Problem::Neumann, space, p);
    s.half_plane_datum = transfer_neumann_datum(g, map);
    if (!s.half_plane_datum.certificates().neumann_finite())
        throw DomainError("Neumann integral undefined: int |T_N(g)|/(1+|x|) = inf");
    s.field = neumann_field(s.half_plane_datum);
    s.datum_label = g.param.label();
    auto& d = s.diagnostics;
    d.verdict = neumann_verdict(map, nu, p, space, opt, d.guaranteed);
    if (!opt.diagnostics) return s;
    nt_norm(s, nu, g.param, [&s](cplx z) { const Vec2 v = s.gradient(z); return std::hypot(v[0], v[1]); },
            p, space, opt);
    d.datum_norm = datum_norm(g, map, nu, p, space);
    finish_ratio(d);
    neumann_boundary_error(s, g.param, opt);
    return s;
}

BVPSolution solve_neumann_atomic(const ConformalMap& map, const Weight& nu, const AtomicDatum& datum,
                                 const SolveOptions& opt) {
    BVPSolution s = base_solution(map, Problem::Neumann, Space::H1, 1.0);
    const CurveFunction g{datum.sum()};
    s.half_plane_datum = transfer_neumann_datum(g, map);
    s.field = neumann_field(s.half_plane_datum);
    s.datum_label = "atomic(" + std::to_string(datum.atoms.size()) + ")";
    auto& d = s.diagnostics;
    const auto h1 = h1_condition(nu, map);
    d.guaranteed = h1.holds;
    d.verdict = h1.holds ? "guaranteed" : "outside guaranteed range";
    if (!opt.diagnostics) return s;
    nt_norm(s, nu, g.param, [&s](cplx z) { const Vec2 v = s.gradient(z); return std::hypot(v[0], v[1]); },
            1.0, Space::H1, opt);
    d.datum_norm = datum.coefficient_norm();
    finish_ratio(d);
    neumann_boundary_error(s, g.param, opt);
    return s;
}

BVPSolution solve_regularity(const ConformalMap& map, const Weight& nu, const CurveFunction& g, double p,
                             Space space, const SolveOptions& opt) {
    if (space == Space::H1) throw DomainError("H1 Regularity solves are not supported");
    if (!g.param.has_derivative())
        throw DomainError("Regularity datum needs a locally integrable weak derivative (no jumps)");
    BVPSolution s = base_solution(map, Problem::Regularity, space, p);
    s.half_plane_datum = transfer_dirichlet_datum(g, map);
    if (!s.half_plane_datum.certificates().poisson_finite())
        throw DomainError("datum is outside the class int |g o Phi|/(1+x^2) < inf");
    const BoundaryFunction f = s.half_plane_datum;
    s.field.tag = HarmonicField::Tag::Poisson;
    s.field.value = [f](double x, double y) { return poisson(f, x, y); };
    s.field.gradient = [f](double x, double y) { return dirichlet_gradient(f, x, y); };
    s.datum_label = g.param.label();
    auto& d = s.diagnostics;
    d.verdict = neumann_verdict(map, nu, p, space, opt, d.guaranteed);
    if (!opt.diagnostics) return s;
    nt_norm(s, nu, g.param, [&s](cplx z) { const Vec2 v = s.gradient(z); return std::hypot(v[0], v[1]); },
            p, space, opt);
    d.datum_norm = derivative_norm(g, map, nu, p, space);
    finish_ratio(d);
    for (double t : continuity_points(g.param, map.domain)) {
        const cplx z = map.domain.eta(t) + cplx(0.0, opt.boundary_offset);
        d.boundary_error = std::max(d.boundary_error, std::abs(s.value(z) - g.param(t)));
    }
    // Two gradient routes on a few interior half-plane points.
    const auto [a, b] = data_span(f);
    for (int k = 0; k < 12; ++k) {
        const double x = a + (b - a) * (k + 0.5) / 12.0;
        const double y = 0.05 * (b - a) * (1 + k % 3);
        const Vec2 g1 = dirichlet_gradient(f, x, y);
        const Vec2 g2 = poisson_gradient_direct(f, x, y);
        const double m1 = std::hypot(g1[0], g1[1]), m2 = std::hypot(g2[0], g2[1]);
        d.bridge_error = std::max(d.bridge_error, std::abs(m1 - m2) / std::max(m2, 1e-300));
    }
    // |T_D(g)'| against |T_N(g')| by finite differences of T_D(g).
    for (int k = 0; k < 24; ++k) {
        const double x = a + (b - a) * (k + 0.37) / 24.0;
        if (std::abs(x) < 1e-3) continue;
        const double h = 1e-6 * std::max(1.0, std::abs(x));
        const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
        const double tn = std::abs(g.derivative(map.domain, map.phi1(x))) * map.boundary_derivative_modulus(x);
        d.transfer_identity_error = std::max(d.transfer_identity_error, std::abs(std::abs(fd) - tn));
    }
    return s;
}

std::pair<int, int> duality_implication(const ConformalMap& map, const Weight& nu,
                                        const std::vector<double>& ps) {
    int exceptions = 0, checked = 0;
    for (double p : ps) {
        if (!(p > 1.0)) continue;
        if (!dirichlet_guaranteed(nu, map, p)) continue;
        ++checked;
        const double pp = p / (p - 1.0);
        if (!neumann_guaranteed(nu.pow(1.0 - pp), map, pp)) ++exceptions;
    }
    return {exceptions, checked};
}

SolvabilityReport solvability_report(const ConformalMap& map, const Weight& nu) {
    SolvabilityReport r;
    const auto th = dirichlet_threshold(nu, map);
    r.p_phi = th.p_phi;
    r.dirichlet_restricted_endpoint = th.restricted_endpoint;
    r.range = neumann_range(nu, map);
    const auto h1 = h1_condition(nu, map);
    r.h1 = h1.holds;
    r.h1_corollary_discrepancy = h1.corollary_discrepancy;
    const Weight u = derivative_modulus(map);
    const Weight v = pushforward(nu, map);
    if (!r.range.empty) {
        if (std::isfinite(r.range.p_plus) && r.range.p_plus > 1.0)
            r.spr_plus = spr_sufficient(u, v, r.range.p_plus).holds;
        if (r.range.p_minus > 1.0) {
            r.spr_minus = spr_sufficient(u, v, r.range.p_minus).holds;
            r.well_defined_minus =
                endpoint_well_defined(map, nu, r.range.p_minus, default_well_defined_sets()).holds_empirically;
        }
    } else {
        r.notes.push_back("no L^p solvability guaranteed");
    }
    r.range.flags = {r.dirichlet_restricted_endpoint, r.h1, r.spr_minus, r.spr_plus, r.well_defined_minus};
    if (map.cone_alpha && nu.power_exponent()) {
        std::vector<double> ps;
        for (int k = 1; k <= 40; ++k) ps.push_back(1.0 + 0.1 * k);
        const auto [ex, n] = duality_implication(map, nu, ps);
        r.duality_exceptions = ex;
        r.duality_checked = n;
    }
    if (r.h1_corollary_discrepancy) r.notes.push_back("H1 verdict differs from the cone corollary region");
    return r;
}

}  // namespace lipbvp
