#include "lipbvp/boundary_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipbvp/lorentz.hpp"

namespace lipbvp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_increasing(const std::vector<double>& v, const char* what) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!(v[i + 1] > v[i])) throw DomainError(std::string(what) + " must be strictly increasing");
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

bool contains_point(const std::vector<double>& v, double x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

quad::Result integrate_structure_impl(const BoundaryFunction& f, const std::function<double(double)>& g,
                                 const std::vector<double>& extra,
                                 const std::vector<double>& extra_singular,
                                 const quad::Tolerance& tol) {
    const auto supp = f.support();
    std::vector<double> singular = merged(f.singular_points(), extra_singular);
    std::vector<double> pts = merged(merged(f.breakpoints(), singular), extra);
    if (supp) {
        pts.push_back(supp->first);
        pts.push_back(supp->second);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        pts.erase(std::remove_if(pts.begin(), pts.end(),
                                 [&](double t) { return t < supp->first || t > supp->second; }),
                  pts.end());
    } else if (pts.empty()) {
        pts.push_back(0.0);
    }
    quad::Result total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        if (contains_point(singular, a) || contains_point(singular, b)) {
            const double m = 0.5 * (a + b);
            total += quad::tanh_sinh(g, a, m, 1e-13);
            total += quad::tanh_sinh(g, m, b, 1e-13);
        } else {
            total += quad::integrate(g, a, b, tol);
        }
    }
    if (!supp) {
        const double lo = pts.front(), hi = pts.back();
        const double scale = std::max(1.0, 0.25 * (hi - lo));
        total += quad::integrate_to_infinity(g, hi, scale, tol);
        total += quad::integrate_to_infinity([&](double t) { return g(-t); }, -lo, scale, tol);
    }
    return total;
}

double bump_profile(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

}  // namespace

bool Certificates::poisson_finite() const { return std::isfinite(poisson_class); }
bool Certificates::neumann_finite() const { return std::isfinite(neumann_class); }
bool Certificates::derivative_finite() const { return std::isfinite(derivative_class); }

BoundaryFunction BoundaryFunction::constant(double c) {
    if (!std::isfinite(c)) throw DomainError("constant datum must be finite");
    BoundaryFunction f;
    f.kind_ = Kind::Constant;
    f.c_ = c;
    f.label_ = "constant";
    return f;
}

BoundaryFunction BoundaryFunction::piecewise_constant(std::vector<double> edges,
                                                      std::vector<double> values) {
    if (edges.size() != values.size() + 1 || values.empty())
        throw DomainError("piecewise-constant datum needs n >= 1 cells and n+1 edges");
    require_increasing(edges, "edges");
    BoundaryFunction f;
    f.kind_ = Kind::PiecewiseConstant;
    f.support_ = std::make_pair(edges.front(), edges.back());
    f.breakpoints_ = edges;
    f.nodes_ = std::move(edges);
    f.values_ = std::move(values);
    f.label_ = "piecewise_constant";
    return f;
}

BoundaryFunction BoundaryFunction::indicator(double a, double b, double height) {
    auto f = piecewise_constant({a, b}, {height});
    f.label_ = "indicator";
    return f;
}

BoundaryFunction BoundaryFunction::piecewise_linear(std::vector<double> knots,
                                                    std::vector<double> values) {
    if (knots.size() != values.size() || knots.size() < 2)
        throw DomainError("piecewise-linear datum needs at least two knots");
    require_increasing(knots, "knots");
    BoundaryFunction f;
    f.kind_ = Kind::PiecewiseLinear;
    f.support_ = std::make_pair(knots.front(), knots.back());
    f.breakpoints_ = knots;
    f.nodes_ = std::move(knots);
    f.values_ = std::move(values);
    f.label_ = "piecewise_linear";
    return f;
}

BoundaryFunction BoundaryFunction::hat(double a, double c, double b) {
    auto f = piecewise_linear({a, c, b}, {0.0, 1.0, 0.0});
    f.label_ = "hat";
    return f;
}

BoundaryFunction BoundaryFunction::bump(double center, double width, double height) {
    if (!(width > 0.0)) throw DomainError("bump width must be positive");
    BoundaryFunction f;
    f.kind_ = Kind::Bump;
    f.center_ = center;
    f.width_ = width;
    f.height_ = height;
    f.support_ = std::make_pair(center - width, center + width);
    f.breakpoints_ = {center - width, center, center + width};
    f.label_ = "bump";
    return f;
}

BoundaryFunction BoundaryFunction::generic(std::function<double(double)> fn,
                                           std::function<double(double)> derivative,
                                           std::optional<std::pair<double, double>> support,
                                           std::vector<double> breakpoints,
                                           std::vector<double> singular, std::string label) {
    if (!fn) throw DomainError("generic datum needs an evaluator");
    if (support && !(support->second > support->first)) throw DomainError("empty support");
    BoundaryFunction f;
    f.kind_ = Kind::Generic;
    f.fn_ = std::move(fn);
    f.dfn_ = std::move(derivative);
    f.support_ = support;
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    std::sort(singular.begin(), singular.end());
    singular.erase(std::unique(singular.begin(), singular.end()), singular.end());
    f.breakpoints_ = std::move(breakpoints);
    f.singular_ = std::move(singular);
    f.label_ = std::move(label);
    return f;
}

BoundaryFunction BoundaryFunction::atom(double center, double radius, const Weight& w) {
    if (!(radius > 0.0)) throw DomainError("atom radius must be positive");
    const double m1 = integral(w, center - radius, center);
    const double m2 = integral(w, center, center + radius);
    if (!(m1 > 0.0 && m2 > 0.0 && std::isfinite(m1) && std::isfinite(m2)))
        throw DomainError("atom halves need finite positive weight");
    const double lam = std::min(m1, m2) / (m1 + m2);
    auto f = piecewise_constant({center - radius, center, center + radius}, {lam / m1, -lam / m2});
    f.label_ = "atom";
    return f;
}

double BoundaryFunction::operator()(double t) const {
    switch (kind_) {
        case Kind::Constant:
            return c_;
        case Kind::PiecewiseConstant: {
            if (t < nodes_.front() || t >= nodes_.back()) return 0.0;
            const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
            return values_[static_cast<std::size_t>(it - nodes_.begin()) - 1];
        }
        case Kind::PiecewiseLinear: {
            if (t < nodes_.front() || t > nodes_.back()) return 0.0;
            auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
            std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
            if (i >= nodes_.size()) i = nodes_.size() - 1;
            const double t0 = nodes_[i - 1], t1 = nodes_[i];
            const double s = (t - t0) / (t1 - t0);
            return values_[i - 1] + s * (values_[i] - values_[i - 1]);
        }
        case Kind::Bump:
            return height_ * bump_profile((t - center_) / width_);
        case Kind::Generic:
            if (support_ && (t < support_->first || t > support_->second)) return 0.0;
            return fn_(t);
    }
    return 0.0;
}

bool BoundaryFunction::has_derivative() const {
    switch (kind_) {
        case Kind::Constant:
        case Kind::Bump:
            return true;
        case Kind::PiecewiseConstant:
            return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
        case Kind::PiecewiseLinear:
            return values_.front() == 0.0 && values_.back() == 0.0;
        case Kind::Generic:
            return static_cast<bool>(dfn_);
    }
    return false;
}

double BoundaryFunction::derivative_at(double t) const {
    switch (kind_) {
        case Kind::Constant:
            return 0.0;
        case Kind::Bump: {
            const double s = (t - center_) / width_;
            if (std::abs(s) >= 1.0) return 0.0;
            const double q = 1.0 - s * s;
            return height_ * bump_profile(s) * (-2.0 * s / (q * q)) / width_;
        }
        default:
            return derivative()(t);
    }
}

BoundaryFunction BoundaryFunction::derivative() const {
    if (!has_derivative())
        throw UnsupportedError("datum has no locally integrable weak derivative (" + label_ + ")");
    switch (kind_) {
        case Kind::Constant:
        case Kind::PiecewiseConstant:
            return zero();
        case Kind::PiecewiseLinear: {
            std::vector<double> slopes(values_.size() - 1);
            for (std::size_t i = 0; i + 1 < values_.size(); ++i)
                slopes[i] = (values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]);
            return piecewise_constant(nodes_, slopes);
        }
        case Kind::Bump: {
            const double c = center_, w = width_, h = height_;
            auto d = [c, w, h](double t) {
                const double s = (t - c) / w;
                if (std::abs(s) >= 1.0) return 0.0;
                const double q = 1.0 - s * s;
                return h * bump_profile(s) * (-2.0 * s / (q * q)) / w;
            };
            return generic(d, {}, support_, breakpoints_, {}, "bump'");
        }
        case Kind::Generic:
            return generic(dfn_, {}, support_, breakpoints_, singular_, label_ + "'");
    }
    return zero();
}

BoundaryFunction BoundaryFunction::scaled(double c) const {
    BoundaryFunction f = *this;
    switch (kind_) {
        case Kind::Constant:
            f.c_ *= c;
            break;
        case Kind::PiecewiseConstant:
        case Kind::PiecewiseLinear:
            for (double& v : f.values_) v *= c;
            break;
        case Kind::Bump:
            f.height_ *= c;
            break;
        case Kind::Generic: {
            auto fn = fn_;
            f.fn_ = [fn, c](double t) { return c * fn(t); };
            if (dfn_) {
                auto d = dfn_;
                f.dfn_ = [d, c](double t) { return c * d(t); };
            }
            break;
        }
    }
    return f;
}

BoundaryFunction BoundaryFunction::plus(const BoundaryFunction& o) const {
    if (kind_ == Kind::Constant && c_ == 0.0) return o;
    if (o.kind_ == Kind::Constant && o.c_ == 0.0) return *this;
    if (kind_ == Kind::Constant && o.kind_ == Kind::Constant) return constant(c_ + o.c_);
    if (kind_ == o.kind_ && (kind_ == Kind::PiecewiseConstant || kind_ == Kind::PiecewiseLinear)) {
        auto nodes = merged(nodes_, o.nodes_);
        if (kind_ == Kind::PiecewiseConstant) {
            std::vector<double> v(nodes.size() - 1);
            for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
                const double m = 0.5 * (nodes[i] + nodes[i + 1]);
                v[i] = (*this)(m) + o(m);
            }
            return piecewise_constant(std::move(nodes), std::move(v));
        }
        if (nodes_.front() <= o.nodes_.back() && o.nodes_.front() <= nodes_.back()) {
            std::vector<double> v(nodes.size());
            for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = (*this)(nodes[i]) + o(nodes[i]);
            return piecewise_linear(std::move(nodes), std::move(v));
        }
    }
    const BoundaryFunction a = *this, b = o;
    std::function<double(double)> d;
    if (a.has_derivative() && b.has_derivative())
        d = [a, b](double t) { return a.derivative_at(t) + b.derivative_at(t); };
    std::optional<std::pair<double, double>> supp;
    if (a.support_ && b.support_)
        supp = std::make_pair(std::min(a.support_->first, b.support_->first),
                              std::max(a.support_->second, b.support_->second));
    return generic([a, b](double t) { return a(t) + b(t); }, d, supp,
                   merged(a.breakpoints_, b.breakpoints_), merged(a.singular_, b.singular_), "sum");
}

Certificates BoundaryFunction::certificates() const {
    Certificates c;
    auto finite_or_inf = [](const quad::Result& r) { return r.converged ? r.value : kInf; };
    const BoundaryFunction& f = *this;
    c.poisson_class = finite_or_inf(integrate_structure_impl(
        f, [&](double t) { return std::abs(f(t)) / (1.0 + t * t); }, {}, {}, {}));
    c.neumann_class = finite_or_inf(integrate_structure_impl(
        f, [&](double t) { return std::abs(f(t)) / (1.0 + std::abs(t)); }, {}, {}, {}));
    if (has_derivative()) {
        const BoundaryFunction d = derivative();
        c.derivative_class = finite_or_inf(integrate_structure_impl(
            d, [&](double t) { return std::abs(d(t)) / (1.0 + std::abs(t)); }, {}, {}, {}));
    } else {
        c.derivative_class = std::numeric_limits<double>::quiet_NaN();
    }
    return c;
}

quad::Result integrate_structure(const BoundaryFunction& f, const std::function<double(double)>& g,
                                 const std::vector<double>& extra,
                                 const std::vector<double>& singular, const quad::Tolerance& tol) {
    return integrate_structure_impl(f, g, extra, singular, tol);
}

quad::Result integrate_against(const BoundaryFunction& f, const std::function<double(double)>& kernel,
                               std::vector<double> extra, const quad::Tolerance& tol) {
    return integrate_structure_impl(f, [&](double t) { return f(t) * kernel(t); }, extra, {}, tol);
}

quad::Result integrate_against_singular(const BoundaryFunction& f,
                                        const std::function<double(double)>& kernel,
                                        std::vector<double> extra, std::vector<double> singular,
                                        const quad::Tolerance& tol) {
    return integrate_structure_impl(f, [&](double t) { return f(t) * kernel(t); }, extra, singular, tol);
}

double weighted_lp_norm(const BoundaryFunction& f, const Weight& w, double p) {
    const auto r = integrate_structure_impl(
        f, [&](double t) { return std::pow(std::abs(f(t)), p) * w(t); }, {}, w.singular_points(), {});
    return r.converged ? std::pow(r.value, 1.0 / p) : kInf;
}

cplx CurveFunction::derivative(const GraphDomain& domain, double t) const {
    return param.derivative_at(t) / domain.eta_prime(t);
}

double curve_lp_norm(const CurveFunction& g, const GraphDomain& domain, const Weight& nu, double p) {
    const auto r = integrate_structure_impl(
        g.param,
        [&](double t) {
            return std::pow(std::abs(g.param(t)), p) * nu.on_curve(domain.eta(t)) *
                   domain.arc_density(t);
        },
        domain.kinks(), nu.singular_points(), {});
    return r.converged ? std::pow(r.value, 1.0 / p) : kInf;
}

double curve_lorentz_norm(const CurveFunction& g, const GraphDomain& domain, const Weight& nu,
                          double p, bool weak) {
    const BoundaryFunction& f = g.param;
    if (f.kind() != BoundaryFunction::Kind::PiecewiseConstant)
        throw UnsupportedError("Lorentz norms are exact only for piecewise-constant data");
    const auto& e = f.nodes();
    std::vector<double> masses(f.values().size());
    const auto sing = merged(nu.singular_points(), domain.kinks());
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const auto cell = BoundaryFunction::indicator(e[i], e[i + 1]);
        const auto r = integrate_structure_impl(
            cell, [&](double t) { return nu.on_curve(domain.eta(t)) * domain.arc_density(t); }, {},
            sing, {});
        masses[i] = r.converged ? r.value : kInf;
    }
    return lorentz_norm(f.values(), masses, p, weak ? LorentzQ::Infinity : LorentzQ::One);
}

double lorentz_norm(const BoundaryFunction& f, const Weight& w, double p, bool weak) {
    const LorentzQ q = weak ? LorentzQ::Infinity : LorentzQ::One;
    if (f.kind() == BoundaryFunction::Kind::Constant)
        return f.constant_value() == 0.0 ? 0.0 : kInf;
    if (f.kind() != BoundaryFunction::Kind::PiecewiseConstant)
        throw UnsupportedError("Lorentz norms are exact only for piecewise-constant data");
    const SampledFunction s(f.nodes(), f.values());
    return lorentz_norm(s, w, p, q);
}

}  // namespace lipbvp
