#include "lipbvp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lipbvp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_scale(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("weight scale must be positive and finite");
}

std::vector<double> breakpoints_of(const Weight& w);

}  // namespace

Weight Weight::power(double beta, double scale) {
    if (!std::isfinite(beta)) throw DomainError("power exponent must be finite");
    require_scale(scale);
    Weight w;
    w.kind_ = Kind::Power;
    w.beta_ = beta;
    w.scale_ = scale;
    return w;
}

Weight Weight::power_log(double beta, double inner, double scale) {
    if (!std::isfinite(beta) || !(inner > 0.0)) throw DomainError("invalid power-log parameters");
    require_scale(scale);
    Weight w;
    w.kind_ = Kind::PowerLog;
    w.beta_ = beta;
    w.inner_ = inner;
    w.scale_ = scale;
    return w;
}

Weight Weight::log_cap(double inner, double scale) {
    if (!(inner > 0.0)) throw DomainError("invalid log-cap parameter");
    require_scale(scale);
    Weight w;
    w.kind_ = Kind::LogCap;
    w.inner_ = inner;
    w.scale_ = scale;
    return w;
}

Weight Weight::product(std::vector<WeightFactor> factors, double scale) {
    require_scale(scale);
    for (const auto& f : factors)
        if (!std::isfinite(f.exponent)) throw DomainError("product exponents must be finite");
    Weight w;
    w.kind_ = Kind::Product;
    w.scale_ = scale;
    w.factors_ = std::make_shared<const std::vector<WeightFactor>>(std::move(factors));
    return w;
}

Weight Weight::sampled(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() != values.size() || grid.empty())
        throw DomainError("sampled weight needs matching nonempty grid and values");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i + 1] > grid[i])) throw DomainError("sampled weight grid must be increasing");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("sampled weight must be positive");
    Weight w;
    w.kind_ = Kind::Sampled;
    w.grid_ = std::make_shared<const std::vector<double>>(std::move(grid));
    w.values_ = std::make_shared<const std::vector<double>>(std::move(values));
    return w;
}

Weight Weight::custom(std::function<double(double)> density, std::vector<double> singular_points,
                      bool radial, std::string label) {
    if (!density) throw DomainError("custom weight needs a density");
    Weight w;
    w.kind_ = Kind::Custom;
    w.fn_ = std::move(density);
    std::sort(singular_points.begin(), singular_points.end());
    w.singular_ = std::move(singular_points);
    w.custom_radial_ = radial;
    w.label_ = std::move(label);
    return w;
}

const std::vector<WeightFactor>& Weight::factors() const {
    static const std::vector<WeightFactor> empty;
    return factors_ ? *factors_ : empty;
}

bool Weight::radial() const {
    switch (kind_) {
        case Kind::Power:
        case Kind::PowerLog:
        case Kind::LogCap:
            return true;
        case Kind::Product:
            return std::all_of(factors().begin(), factors().end(),
                               [](const WeightFactor& f) { return f.weight.radial(); });
        case Kind::Sampled:
            return false;
        case Kind::Custom:
            return custom_radial_;
    }
    return false;
}

double Weight::log_abs(double s) const {
    const double ls = std::log(scale_);
    switch (kind_) {
        case Kind::Power:
            return beta_ == 0.0 ? ls : ls + beta_ * s;
        case Kind::PowerLog:
            return ls + (beta_ == 0.0 ? 0.0 : beta_ * s) - std::log1p(std::max(0.0, -inner_ * s));
        case Kind::LogCap:
            return ls + std::log(std::max(1.0, -inner_ * s));
        case Kind::Product: {
            double acc = ls;
            for (const auto& f : factors()) {
                if (f.exponent == 0.0) continue;
                acc += f.exponent * f.weight.log_abs(s);
            }
            return acc;
        }
        case Kind::Custom:
            if (custom_radial_) return std::log(fn_(std::exp(s)));
            [[fallthrough]];
        case Kind::Sampled:
            throw UnsupportedError("log_abs requires a radial weight");
    }
    return 0.0;
}

double Weight::log_value(double x) const {
    if (kind_ == Kind::Sampled) return std::log((*this)(x));
    if (kind_ == Kind::Custom) return std::log(fn_(x));
    if (kind_ == Kind::Product && !radial()) {
        double acc = std::log(scale_);
        for (const auto& f : factors())
            if (f.exponent != 0.0) acc += f.exponent * f.weight.log_value(x);
        return acc;
    }
    const double a = std::abs(x);
    if (a == 0.0) {
        const double lo = log_abs(-1e300);
        return std::isnan(lo) ? kInf : lo;
    }
    return log_abs(std::log(a));
}

double Weight::operator()(double x) const {
    switch (kind_) {
        case Kind::Power:
            return beta_ == 0.0 ? scale_ : scale_ * std::pow(std::abs(x), beta_);
        case Kind::Sampled: {
            const auto& g = *grid_;
            const auto& v = *values_;
            if (x <= g.front()) return v.front();
            if (x >= g.back()) return v.back();
            const auto it = std::upper_bound(g.begin(), g.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - g.begin()) - 1;
            const double t = (x - g[i]) / (g[i + 1] - g[i]);
            return (1.0 - t) * v[i] + t * v[i + 1];
        }
        case Kind::Custom:
            return fn_(x);
        default:
            return std::exp(log_value(x));
    }
}

double Weight::on_curve(cplx xi) const { return radial() ? (*this)(std::abs(xi)) : (*this)(xi.real()); }

std::vector<double> Weight::singular_points() const {
    switch (kind_) {
        case Kind::Power:
            return beta_ == 0.0 ? std::vector<double>{} : std::vector<double>{0.0};
        case Kind::PowerLog:
        case Kind::LogCap:
            return {0.0};
        case Kind::Product: {
            std::vector<double> out;
            for (const auto& f : factors()) {
                auto s = f.weight.singular_points();
                out.insert(out.end(), s.begin(), s.end());
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        }
        case Kind::Sampled:
            return {};
        case Kind::Custom:
            return singular_;
    }
    return {};
}

std::optional<double> Weight::power_exponent() const {
    if (kind_ == Kind::Power) return beta_;
    if (kind_ == Kind::Product) {
        double acc = 0.0;
        for (const auto& f : factors()) {
            auto e = f.weight.power_exponent();
            if (!e) return std::nullopt;
            acc += f.exponent * *e;
        }
        return acc;
    }
    return std::nullopt;
}

Weight Weight::pow(double e) const {
    if (e == 1.0) return *this;
    if (kind_ == Kind::Power) return power(beta_ * e, std::pow(scale_, e));
    if (kind_ == Kind::Product) {
        std::vector<WeightFactor> f = factors();
        for (auto& x : f) x.exponent *= e;
        return product(std::move(f), std::pow(scale_, e));
    }
    return product({{*this, e}});
}

Weight Weight::scaled(double c) const {
    require_scale(c);
    if (kind_ == Kind::Sampled) {
        std::vector<double> v = *values_;
        for (double& x : v) x *= c;
        return sampled(*grid_, std::move(v));
    }
    if (kind_ == Kind::Custom) {
        auto fn = fn_;
        return custom([fn, c](double x) { return c * fn(x); }, singular_, custom_radial_, label_);
    }
    Weight w = *this;
    w.scale_ *= c;
    return w;
}

std::string Weight::describe() const {
    std::ostringstream os;
    os.precision(12);
    switch (kind_) {
        case Kind::Power:
            os << "power(beta=" << beta_ << ")";
            break;
        case Kind::PowerLog:
            os << "powerlog(beta=" << beta_ << ",inner=" << inner_ << ")";
            break;
        case Kind::LogCap:
            os << "logcap(inner=" << inner_ << ")";
            break;
        case Kind::Product: {
            os << "product(";
            bool first = true;
            for (const auto& f : factors()) {
                if (!first) os << ",";
                first = false;
                os << f.weight.describe() << "^" << f.exponent;
            }
            os << ")";
            break;
        }
        case Kind::Sampled:
            os << "sampled(n=" << grid_->size() << ")";
            break;
        case Kind::Custom:
            os << label_;
            break;
    }
    if (scale_ != 1.0) os << "*" << scale_;
    return os.str();
}

Weight multiply(const Weight& a, const Weight& b) {
    using K = Weight::Kind;
    const double c = a.scale() * b.scale();
    if (a.kind() == K::Power && b.kind() == K::Power) return Weight::power(a.beta() + b.beta(), c);
    if (a.kind() == K::Power && b.kind() == K::PowerLog)
        return Weight::power_log(a.beta() + b.beta(), b.inner(), c);
    if (a.kind() == K::PowerLog && b.kind() == K::Power)
        return Weight::power_log(a.beta() + b.beta(), a.inner(), c);
    if (a.kind() == K::Power && a.beta() == 0.0) return b.scaled(a.scale());
    if (b.kind() == K::Power && b.beta() == 0.0) return a.scaled(b.scale());
    std::vector<WeightFactor> f;
    double scale = 1.0;
    for (const Weight* w : {&a, &b}) {
        if (w->kind() == K::Product) {
            f.insert(f.end(), w->factors().begin(), w->factors().end());
            scale *= w->scale();
        } else {
            f.push_back({*w, 1.0});
        }
    }
    return Weight::product(std::move(f), scale);
}

namespace {

std::vector<double> breakpoints_of(const Weight& w) {
    std::vector<double> out;
    if (w.kind() == Weight::Kind::Product) {
        for (const auto& f : w.factors()) {
            auto b = breakpoints_of(f.weight);
            out.insert(out.end(), b.begin(), b.end());
        }
    }
    return out;
}

quad::LogIntegral radial_piece(const Weight& w, double c, double d, double power) {
    auto g = [&](double s) { return s + power * w.log_abs(s); };
    if (c == 0.0) return quad::log_integral_to_minus_infinity(g, std::log(d));
    return quad::log_integral_finite(g, std::log(c), std::log(d));
}

quad::LogIntegral combine(quad::LogIntegral a, const quad::LogIntegral& b) {
    if (!a.finite || !b.finite) {
        a.finite = false;
        a.log_value = kInf;
        return a;
    }
    a.log_value = quad::log_sum_exp(a.log_value, b.log_value);
    a.rel_error = std::max(a.rel_error, b.rel_error);
    return a;
}

}  // namespace

quad::LogIntegral log_integral_origin(const Weight& w, double log_h, double power, int side) {
    if (w.radial()) {
        auto g = [&](double s) { return s + power * w.log_abs(s); };
        return quad::log_integral_to_minus_infinity(g, log_h);
    }
    const double sgn = side < 0 ? -1.0 : 1.0;
    auto g = [&](double s) { return s + power * w.log_value(sgn * std::exp(s)); };
    return quad::log_integral_to_minus_infinity(g, log_h);
}

quad::LogIntegral log_integral(const Weight& w, double a, double b, double power) {
    quad::LogIntegral out;
    if (!(b > a)) return out;
    if (w.radial()) {
        if (a < 0.0 && b > 0.0)
            return combine(radial_piece(w, 0.0, -a, power), radial_piece(w, 0.0, b, power));
        if (b <= 0.0) return radial_piece(w, -b, -a, power);
        return radial_piece(w, a, b, power);
    }
    const auto sing = w.singular_points();
    std::vector<double> pts{a};
    for (double s : sing)
        if (s > a && s < b) pts.push_back(s);
    for (double s : breakpoints_of(w))
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto is_sing = [&](double x) { return std::binary_search(sing.begin(), sing.end(), x); };
    bool first = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double c = pts[i], d = pts[i + 1];
        std::vector<std::pair<double, double>> pieces;
        if (is_sing(c) && is_sing(d)) {
            pieces = {{c, 0.5 * (c + d)}, {0.5 * (c + d), d}};
        } else {
            pieces = {{c, d}};
        }
        for (auto [lo, hi] : pieces) {
            quad::LogIntegral r;
            if (is_sing(lo)) {
                auto g = [&, lo](double s) { return s + power * w.log_value(lo + std::exp(s)); };
                r = quad::log_integral_to_minus_infinity(g, std::log(hi - lo));
            } else if (is_sing(hi)) {
                auto g = [&, hi](double s) { return s + power * w.log_value(hi - std::exp(s)); };
                r = quad::log_integral_to_minus_infinity(g, std::log(hi - lo));
            } else {
                r = quad::log_integral_finite([&](double x) { return power * w.log_value(x); }, lo,
                                              hi);
            }
            out = first ? r : combine(out, r);
            first = false;
        }
    }
    return out;
}

double integral(const Weight& w, double a, double b, double power) {
    if (!(b > a)) return 0.0;
    if (w.kind() == Weight::Kind::Power) {
        const double e = w.beta() * power;
        if (e <= -1.0 && a <= 0.0 && b >= 0.0) return kInf;
        auto prim = [e](double x) {
            return std::copysign(std::pow(std::abs(x), e + 1.0), x) / (e + 1.0);
        };
        double v = prim(b) - prim(a);
        // Cancellation guard for short intervals away from the origin.
        if (!(v > 0.0) || v < 1e-8 * (std::abs(prim(b)) + std::abs(prim(a)))) {
            auto r = log_integral(w, a, b, power);
            return r.finite ? std::exp(r.log_value) : kInf;
        }
        return std::pow(w.scale(), power) * v;
    }
    auto r = log_integral(w, a, b, power);
    return r.finite ? std::exp(r.log_value) : kInf;
}

Weight derivative_modulus(const ConformalMap& map) {
    if (map.cone_alpha) {
        const double a = *map.cone_alpha;
        return a == 1.0 ? Weight::one() : Weight::power(a - 1.0, a);
    }
    auto m = map;
    return Weight::custom([m](double x) { return m.boundary_derivative_modulus(x); },
                          map.singular_points, false, "|Phi'|");
}

namespace {

std::optional<Weight> compose_radial(const Weight& nu, double a) {
    using K = Weight::Kind;
    switch (nu.kind()) {
        case K::Power:
            return Weight::power(a * nu.beta(), nu.scale());
        case K::PowerLog:
            return Weight::power_log(a * nu.beta(), a * nu.inner(), nu.scale());
        case K::LogCap:
            return Weight::log_cap(a * nu.inner(), nu.scale());
        case K::Product: {
            std::vector<WeightFactor> f;
            for (const auto& x : nu.factors()) {
                auto c = compose_radial(x.weight, a);
                if (!c) return std::nullopt;
                f.push_back({*c, x.exponent});
            }
            return Weight::product(std::move(f), nu.scale());
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

Weight compose(const Weight& nu, const ConformalMap& map) {
    if (map.cone_alpha) {
        if (*map.cone_alpha == 1.0 && nu.kind() != Weight::Kind::Custom) return nu;
        if (auto c = compose_radial(nu, *map.cone_alpha)) return *c;
    }
    auto m = map;
    std::vector<double> sing = map.singular_points;
    return Weight::custom([nu, m](double x) { return nu.on_curve(m.boundary(x)); }, sing, false,
                          "nu o Phi");
}

Weight pushforward(const Weight& nu, const ConformalMap& map) {
    return multiply(compose(nu, map), derivative_modulus(map));
}

}  // namespace lipbvp
