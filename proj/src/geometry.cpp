#include "lipbvp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lipbvp/quadrature.hpp"

namespace lipbvp {

using std::numbers::pi;

GraphDomain::GraphDomain(std::function<double(double)> gamma, double lipschitz,
                         std::function<double(double)> gamma_prime, std::vector<double> kinks)
    : gamma_(std::move(gamma)),
      gamma_prime_(std::move(gamma_prime)),
      lipschitz_(lipschitz),
      kinks_(std::move(kinks)) {
    if (!gamma_) throw DomainError("graph function is empty");
    if (!(lipschitz_ >= 0.0) || !std::isfinite(lipschitz_))
        throw DomainError("Lipschitz constant must be finite and nonnegative");
    std::sort(kinks_.begin(), kinks_.end());
}

GraphDomain GraphDomain::half_plane() {
    return GraphDomain([](double) { return 0.0; }, 0.0, [](double) { return 0.0; });
}

double GraphDomain::gamma_prime(double t) const {
    if (gamma_prime_) return gamma_prime_(t);
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    return (gamma_(t + h) - gamma_(t - h)) / (2.0 * h);
}

double GraphDomain::arc_density(double t) const {
    const double d = gamma_prime(t);
    return std::sqrt(1.0 + d * d);
}

double GraphDomain::empirical_lipschitz(const std::vector<double>& ts) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            const double d = std::abs(ts[j] - ts[i]);
            if (d > 0) worst = std::max(worst, std::abs(gamma_(ts[j]) - gamma_(ts[i])) / d);
        }
    }
    return worst;
}

ConeDomain::ConeDomain(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("cone alpha must lie in (0,2)");
}

double ConeDomain::lipschitz() const {
    if (alpha_ == 1.0) return 0.0;
    return std::abs(std::cos(alpha_ * pi / 2) / std::sin(alpha_ * pi / 2));
}

GraphDomain ConeDomain::graph() const {
    const double c = alpha_ == 1.0 ? 0.0 : std::cos(alpha_ * pi / 2) / std::sin(alpha_ * pi / 2);
    return GraphDomain([c](double t) { return c * std::abs(t); }, std::abs(c),
                       [c](double t) { return t > 0 ? c : (t < 0 ? -c : 0.0); }, {0.0});
}

cplx cut_power(cplx z, double a) {
    const double r = std::abs(z);
    if (r == 0.0) return a > 0 ? cplx(0.0, 0.0) : cplx(std::numeric_limits<double>::infinity(), 0.0);
    double th = std::atan2(z.imag(), z.real());
    if (th <= -pi / 2) th += 2 * pi;
    return std::polar(std::pow(r, a), a * th);
}

ConformalMap cone_conformal_map(const ConeDomain& cone) {
    const double a = cone.alpha();
    const double rot = (1.0 - a) * pi / 2;
    const cplx e = std::polar(1.0, rot);
    const double s = std::sin(a * pi / 2);
    ConformalMap m;
    m.domain = cone.graph();
    m.cone_alpha = a;
    m.singular_points = {0.0};
    m.forward = [a, e](cplx z) { return e * cut_power(z, a); };
    m.derivative = [a, e](cplx z) { return a * e * cut_power(z, a - 1.0); };
    m.inverse = [a, rot](cplx w) {
        const double r = std::abs(w);
        if (r == 0.0) return cplx(0.0, 0.0);
        double th = std::atan2(w.imag(), w.real()) - rot;
        // Image arguments lie in [0, alpha pi]; wrap around the middle of the gap.
        const double lo = (a - 2.0) * pi / 2;
        while (th < lo) th += 2 * pi;
        while (th >= lo + 2 * pi) th -= 2 * pi;
        return std::polar(std::pow(r, 1.0 / a), th / a);
    };
    m.phi1 = [a, s](double x) {
        const double v = std::pow(std::abs(x), a) * s;
        return x < 0 ? -v : v;
    };
    m.phi1_inverse = [a, s](double t) {
        const double v = std::pow(std::abs(t) / s, 1.0 / a);
        return t < 0 ? -v : v;
    };
    return m;
}

ConformalMap identity_map() { return cone_conformal_map(ConeDomain(1.0)); }

bool NTCone::contains(cplx z) const {
    const double dy = z.imag() - vertex.imag();
    return dy > 0.0 && std::abs(z.real() - vertex.real()) < std::tan(aperture) * dy;
}

void check_aperture(double aperture, double lipschitz) {
    const double cap = lipschitz == 0.0 ? pi / 2 : std::atan(1.0 / lipschitz);
    if (!(aperture > 0.0 && aperture < cap))
        throw DomainError("cone aperture must lie in (0, arctan(1/L))");
}

std::vector<double> cone_heights(const NTCone& cone) {
    if (!cone.heights.empty()) {
        std::vector<double> h = cone.heights;
        std::sort(h.begin(), h.end());
        return h;
    }
    if (!(cone.r_min > 0.0 && cone.r_max >= cone.r_min) || cone.levels_per_decade < 1)
        throw DomainError("cone radial levels must satisfy 0 < r_min <= r_max");
    std::vector<double> out;
    const double decades = std::log10(cone.r_max / cone.r_min);
    const int n = static_cast<int>(std::floor(decades * cone.levels_per_decade + 1e-9));
    for (int k = 0; k <= n; ++k)
        out.push_back(cone.r_min * std::pow(10.0, static_cast<double>(k) / cone.levels_per_decade));
    return out;
}

std::vector<cplx> nt_cone_samples(const NTCone& cone, double lipschitz) {
    check_aperture(cone.aperture, lipschitz);
    if (cone.rays < 1) throw DomainError("cone needs at least one ray");
    std::vector<double> offsets;
    for (int j = 0; j < cone.rays; ++j) {
        const double th = cone.aperture * (-1.0 + (2.0 * j + 1.0) / cone.rays);
        offsets.push_back(std::tan(th));
    }
    std::vector<cplx> pts;
    for (double h : cone_heights(cone))
        for (double o : offsets) pts.push_back(cone.vertex + cplx(h * o, h));
    std::stable_sort(pts.begin(), pts.end(), [&](cplx p, cplx q) {
        return std::abs(p - cone.vertex) < std::abs(q - cone.vertex);
    });
    return pts;
}

double arc_measure(const GraphDomain& domain, double a, double b) {
    if (!(a <= b)) throw DomainError("arc interval must satisfy a <= b");
    std::vector<double> pts{a};
    for (double k : domain.kinks())
        if (k > a && k < b) pts.push_back(k);
    pts.push_back(b);
    auto r = quad::integrate_panels([&](double t) { return domain.arc_density(t); }, pts,
                                    {1e-14, 1e-14, 4000});
    return r.value;
}

double cone_image_aperture(double alpha, double aperture, double margin) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("cone preservation needs alpha in (0,1)");
    check_aperture(aperture, 0.0);
    const ConformalMap m = cone_conformal_map(ConeDomain(alpha));
    double worst = 0.0;
    const int rays = 181;
    for (double x : {-1.0, 0.0, 1.0}) {
        const cplx w0 = m.boundary(x);
        for (int k = -160; k <= 160; ++k) {
            const double h = std::pow(10.0, k / 20.0);
            for (int j = 0; j < rays; ++j) {
                const double th = aperture * (-1.0 + 2.0 * j / (rays - 1));
                const cplx z(x + h * std::tan(th), h);
                const cplx d = m.forward(z) - w0;
                if (d.imag() <= 0.0) return pi / 2;
                worst = std::max(worst, std::atan2(std::abs(d.real()), d.imag()));
            }
        }
    }
    return std::min(worst + margin, pi / 2);
}

}  // namespace lipbvp
