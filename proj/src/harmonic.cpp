#include "lipbvp/harmonic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lipbvp {

using std::numbers::pi;
using Kind = BoundaryFunction::Kind;

namespace {

const quad::Tolerance kTol{1e-13, 1e-12, 4000};

std::vector<double> near_points(double x, double y) {
    std::vector<double> pts{x};
    for (double k : {1.0, 4.0, 16.0, 64.0}) {
        pts.push_back(x - k * y);
        pts.push_back(x + k * y);
    }
    return pts;
}

double checked(const quad::Result& r, const char* what) {
    if (!r.converged) throw QuadratureError(std::string(what) + ": quadrature did not converge", r.value);
    return r.value;
}

double kernel_integral(const BoundaryFunction& f, const std::function<double(double)>& k, double x,
                       double y, const char* what, std::vector<double> singular = {}) {
    return checked(integrate_against_singular(f, k, near_points(x, y), std::move(singular), kTol),
                   what);
}

struct LinearPiece {
    double t0, t1, slope, at_x;  // f = at_x + slope (t - x) on [t0, t1]
};

std::vector<LinearPiece> linear_pieces(const BoundaryFunction& f, double x) {
    std::vector<LinearPiece> out;
    const auto& k = f.nodes();
    const auto& v = f.values();
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        const double b = (v[i + 1] - v[i]) / (k[i + 1] - k[i]);
        out.push_back({k[i], k[i + 1], b, v[i] + b * (x - k[i])});
    }
    return out;
}

/// Primitive of (1/2) log(s^2 + y^2) in s.
double log_primitive(double s, double y) {
    const double r2 = s * s + y * y;
    const double l = r2 > 0.0 ? s * std::log(r2) : 0.0;
    return 0.5 * (l - 2.0 * s + 2.0 * y * std::atan2(s, y));
}

/// Primitive of log(1 + |t|).
double log1p_primitive(double t) {
    const double a = std::abs(t);
    return std::copysign((1.0 + a) * std::log1p(a) - a, t);
}

}  // namespace

double poisson(const BoundaryFunction& f, double x, double y) {
    if (!(y > 0.0)) throw DomainError("Poisson integral needs y > 0");
    switch (f.kind()) {
        case Kind::Constant:
            return f.constant_value();
        case Kind::PiecewiseConstant: {
            const auto& e = f.nodes();
            const auto& v = f.values();
            double acc = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                acc += v[i] * (std::atan2(e[i + 1] - x, y) - std::atan2(e[i] - x, y));
            return acc / pi;
        }
        case Kind::PiecewiseLinear: {
            double acc = 0.0;
            for (const auto& p : linear_pieces(f, x)) {
                const double s0 = p.t0 - x, s1 = p.t1 - x;
                acc += p.at_x * (std::atan2(s1, y) - std::atan2(s0, y)) +
                       0.5 * p.slope * y * std::log((s1 * s1 + y * y) / (s0 * s0 + y * y));
            }
            return acc / pi;
        }
        default:
            return kernel_integral(
                f, [x, y](double t) { return y / (pi * ((x - t) * (x - t) + y * y)); }, x, y,
                "poisson");
    }
}

double conjugate_poisson(const BoundaryFunction& f, double x, double y) {
    if (!(y > 0.0)) throw DomainError("conjugate Poisson integral needs y > 0");
    switch (f.kind()) {
        case Kind::Constant:
            return 0.0;
        case Kind::PiecewiseConstant: {
            const auto& e = f.nodes();
            const auto& v = f.values();
            double acc = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double da = x - e[i], db = x - e[i + 1];
                acc += v[i] * std::log((da * da + y * y) / (db * db + y * y));
            }
            return acc / (2.0 * pi);
        }
        case Kind::PiecewiseLinear: {
            double acc = 0.0;
            for (const auto& p : linear_pieces(f, x)) {
                const double s0 = p.t0 - x, s1 = p.t1 - x;
                acc += -0.5 * p.at_x * std::log((s1 * s1 + y * y) / (s0 * s0 + y * y)) -
                       p.slope * ((s1 - s0) - y * (std::atan2(s1, y) - std::atan2(s0, y)));
            }
            return acc / pi;
        }
        default:
            return kernel_integral(
                f, [x, y](double t) { return (x - t) / (pi * ((x - t) * (x - t) + y * y)); }, x, y,
                "conjugate poisson");
    }
}

double neumann_integral(const BoundaryFunction& f, double x, double y) {
    if (!(y > 0.0)) throw DomainError("Neumann integral needs y > 0");
    switch (f.kind()) {
        case Kind::Constant:
            if (f.constant_value() == 0.0) return 0.0;
            throw DomainError("nonzero constant is outside the Neumann class");
        case Kind::PiecewiseConstant: {
            const auto& e = f.nodes();
            const auto& v = f.values();
            double acc = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                acc += v[i] * (log_primitive(e[i + 1] - x, y) - log_primitive(e[i] - x, y) -
                               (log1p_primitive(e[i + 1]) - log1p_primitive(e[i])));
            }
            return -acc / pi;
        }
        default: {
            std::vector<double> singular;
            if (y < 1e-2) singular.push_back(x);
            auto k = [x, y](double t) {
                return -(0.5 * std::log((x - t) * (x - t) + y * y) - std::log1p(std::abs(t))) / pi;
            };
            auto pts = near_points(x, y);
            pts.push_back(0.0);
            return checked(integrate_against_singular(f, k, pts, singular, kTol), "neumann integral");
        }
    }
}

Vec2 neumann_gradient(const BoundaryFunction& f, double x, double y) {
    return {-conjugate_poisson(f, x, y), -poisson(f, x, y)};
}

Vec2 dirichlet_gradient(const BoundaryFunction& f, double x, double y) {
    const BoundaryFunction d = f.derivative();
    return {poisson(d, x, y), -conjugate_poisson(d, x, y)};
}

Vec2 poisson_gradient_direct(const BoundaryFunction& f, double x, double y) {
    if (!(y > 0.0)) throw DomainError("gradient needs y > 0");
    if (f.kind() == Kind::Constant) return {0.0, 0.0};
    if (f.kind() == Kind::PiecewiseConstant) {
        const auto& e = f.nodes();
        const auto& v = f.values();
        double gx = 0.0, gy = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double sa = e[i] - x, sb = e[i + 1] - x;
            const double ra = sa * sa + y * y, rb = sb * sb + y * y;
            gx += v[i] * (-y / rb + y / ra);
            gy += v[i] * (-sb / rb + sa / ra);
        }
        return {gx / pi, gy / pi};
    }
    auto kx = [x, y](double t) {
        const double r = (x - t) * (x - t) + y * y;
        return -2.0 * y * (x - t) / (pi * r * r);
    };
    auto ky = [x, y](double t) {
        const double r = (x - t) * (x - t) + y * y;
        return ((x - t) * (x - t) - y * y) / (pi * r * r);
    };
    return {kernel_integral(f, kx, x, y, "gradient"), kernel_integral(f, ky, x, y, "gradient")};
}

double boundary_conjugate(const BoundaryFunction& f, double x) {
    switch (f.kind()) {
        case Kind::Constant:
            return 0.0;
        case Kind::PiecewiseConstant: {
            const auto& e = f.nodes();
            const auto& v = f.values();
            double acc = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                acc += v[i] * 2.0 * std::log(std::abs((x - e[i]) / (x - e[i + 1])));
            return acc / (2.0 * pi);
        }
        case Kind::PiecewiseLinear: {
            double acc = 0.0;
            for (const auto& p : linear_pieces(f, x)) {
                const double s0 = p.t0 - x, s1 = p.t1 - x;
                acc += -p.at_x * std::log(std::abs(s1 / s0)) - p.slope * (s1 - s0);
            }
            return acc / pi;
        }
        default:
            throw UnsupportedError("boundary conjugate needs piecewise data");
    }
}

HarmonicField poisson_field(const BoundaryFunction& f) {
    HarmonicField h;
    h.tag = HarmonicField::Tag::Poisson;
    h.value = [f](double x, double y) { return poisson(f, x, y); };
    h.gradient = [f](double x, double y) { return poisson_gradient_direct(f, x, y); };
    return h;
}

HarmonicField neumann_field(const BoundaryFunction& f) {
    HarmonicField h;
    h.tag = HarmonicField::Tag::Neumann;
    h.value = [f](double x, double y) { return neumann_integral(f, x, y); };
    h.gradient = [f](double x, double y) { return neumann_gradient(f, x, y); };
    return h;
}

HarmonicField conjugate_field(const BoundaryFunction& f) {
    HarmonicField h;
    h.tag = HarmonicField::Tag::ConjugatePair;
    h.value = [f](double x, double y) { return conjugate_poisson(f, x, y); };
    h.gradient = [f](double x, double y) {
        const Vec2 g = poisson_gradient_direct(f, x, y);
        return Vec2{-g[1], g[0]};
    };
    return h;
}

double fd_laplacian(const std::function<double(double, double)>& u, double x, double y, double h) {
    return (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4.0 * u(x, y)) / (h * h);
}

Vec2 fd_gradient(const std::function<double(double, double)>& u, double x, double y, double h) {
    return {(u(x + h, y) - u(x - h, y)) / (2.0 * h), (u(x, y + h) - u(x, y - h)) / (2.0 * h)};
}

cplx pullback_derivative_complex(const CurveFunction& g, const ConformalMap& map, double x) {
    return g.derivative(map.domain, map.phi1(x)) * map.boundary_derivative(x);
}

BoundaryFunction weak_derivative_pullback(const CurveFunction& g, const ConformalMap& map) {
    std::optional<std::pair<double, double>> support;
    if (auto s = g.param.support())
        support = std::make_pair(map.phi1_inverse(s->first), map.phi1_inverse(s->second));
    std::vector<double> bps;
    for (double t : g.param.breakpoints()) bps.push_back(map.phi1_inverse(t));
    for (double t : map.domain.kinks()) bps.push_back(map.phi1_inverse(t));
    std::vector<double> sing = map.singular_points;
    for (double t : g.param.singular_points()) sing.push_back(map.phi1_inverse(t));
    std::function<double(double)> d;
    if (g.param.has_derivative())
        d = [g, map](double x) { return pullback_derivative_complex(g, map, x).real(); };
    const auto param = g.param;
    auto phi1 = map.phi1;
    return BoundaryFunction::generic([param, phi1](double x) { return param(phi1(x)); }, d, support,
                                     bps, sing, "g o Phi");
}

double weak_derivative_pairing(const BoundaryFunction& f, const BoundaryFunction& phi) {
    const BoundaryFunction dphi = phi.derivative();
    const BoundaryFunction df = f.derivative();
    std::vector<double> pts = f.breakpoints();
    const auto sing = f.singular_points();
    const double a = checked(
        integrate_against_singular(dphi, [&](double t) { return f(t); }, pts, sing, kTol), "pairing");
    const double b = checked(
        integrate_against_singular(phi, [&](double t) { return df(t); }, pts, sing, kTol), "pairing");
    return std::abs(a + b);
}

LogMajorization log_majorization_check(const BoundaryFunction& f,
                                       const std::vector<std::array<double, 2>>& points) {
    auto log_mod = [f](double s) {
        const double re = f(s);
        const double im = boundary_conjugate(f, s);
        return 0.5 * std::log(re * re + im * im);
    };
    const BoundaryFunction h =
        BoundaryFunction::generic(log_mod, {}, std::nullopt, {}, f.breakpoints(), "log|F|");
    LogMajorization out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i][0], t = points[i][1];
        const double m = std::hypot(poisson(f, x, t), conjugate_poisson(f, x, t));
        if (!(m > 0.0)) {
            out.skipped.push_back(i);
            out.violations.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        const double v = std::log(m) - poisson(h, x, t);
        out.violations.push_back(v);
        out.max_violation = std::max(out.max_violation, v);
    }
    return out;
}

}  // namespace lipbvp
