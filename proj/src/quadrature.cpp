#include "lipbvp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace lipbvp::quad {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    Result r;
    bool operator<(const Panel& o) const { return r.error < o.r.error; }
};

}  // namespace

Result kronrod15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double rk = fc * kWgk[7];
    double rg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double s = f(c - dx) + f(c + dx);
        rk += kWgk[j] * s;
        if (j % 2 == 1) rg += kWg[j / 2] * s;
    }
    Result r;
    r.value = rk * h;
    r.error = std::abs((rk - rg) * h);
    r.evaluations = 15;
    if (!std::isfinite(r.value)) r.converged = false;
    return r;
}

Result integrate(const Integrand& f, double a, double b, const Tolerance& tol) {
    if (a == b) return {};
    if (a > b) {
        Result r = integrate(f, b, a, tol);
        r.value = -r.value;
        return r;
    }
    std::priority_queue<Panel> heap;
    Result first = kronrod15(f, a, b);
    heap.push({a, b, first});
    double total = first.value;
    double err = first.error;
    int evals = first.evaluations;
    int count = 1;
    bool ok = std::isfinite(total);
    while (ok && err > std::max(tol.abs, tol.rel * std::abs(total))) {
        if (count >= tol.max_intervals) {
            ok = false;
            break;
        }
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
            ok = false;
            heap.push(p);
            break;
        }
        Result l = kronrod15(f, p.a, m);
        Result r = kronrod15(f, m, p.b);
        evals += 30;
        total += l.value + r.value - p.r.value;
        err += l.error + r.error - p.r.error;
        heap.push({p.a, m, l});
        heap.push({m, p.b, r});
        ++count;
        if (!std::isfinite(total)) ok = false;
    }
    // Re-sum to limit drift from incremental updates.
    double sum = 0.0, esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().r.value;
        esum += heap.top().r.error;
        heap.pop();
    }
    Result out;
    out.value = sum;
    out.error = esum;
    out.evaluations = evals;
    out.converged = ok;
    return out;
}

Result integrate_panels(const Integrand& f, std::span<const double> points,
                        const Tolerance& tol) {
    Result total;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] > points[i]) total += integrate(f, points[i], points[i + 1], tol);
    }
    return total;
}

Result integrate_graded(const Integrand& f, double a, double b, const Tolerance& tol,
                        int levels) {
    Result total;
    double hi = b;
    double width = b - a;
    for (int k = 0; k < levels; ++k) {
        width *= 0.5;
        const double lo = a + width;
        if (!(lo > a) || !(lo < hi)) break;
        total += integrate(f, lo, hi, tol);
        hi = lo;
    }
    if (hi > a) {
        Result last = tanh_sinh(f, a, hi, tol.rel);
        total += std::isfinite(last.value) ? last : kronrod15(f, a, hi);
    }
    return total;
}

Result integrate_to_infinity(const Integrand& f, double a, double scale, const Tolerance& tol,
                             int max_panels) {
    Result total;
    double lo = a;
    double w = scale;
    int quiet = 0;
    for (int k = 0; k < max_panels; ++k) {
        Result r = integrate(f, lo, lo + w, tol);
        total += r;
        if (std::abs(r.value) <= std::max(tol.abs, tol.rel * std::abs(total.value))) {
            if (++quiet >= 3) return total;
        } else {
            quiet = 0;
        }
        lo += w;
        w *= 2.0;
    }
    total.converged = false;
    return total;
}

Result tanh_sinh(const Integrand& f, double a, double b, double tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    Result r;
    try {
        r.value = integrator.integrate(f, a, b, tol, &err, &l1);
    } catch (const std::exception&) {
        r.converged = false;
        r.value = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    r.error = err;
    r.converged = std::isfinite(r.value) && err <= std::max(1e-9, 1e3 * tol * l1);
    return r;
}

double log_sum_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

LogIntegral log_integral_finite(const std::function<double(double)>& g, double s0, double s1) {
    LogIntegral out;
    if (!(s1 > s0)) return out;
    double m = -std::numeric_limits<double>::infinity();
    constexpr int kProbe = 33;
    for (int i = 0; i < kProbe; ++i) {
        const double s = s0 + (s1 - s0) * i / (kProbe - 1);
        const double v = g(s);
        if (std::isnan(v)) {
            out.finite = false;
            return out;
        }
        m = std::max(m, v);
    }
    if (m == std::numeric_limits<double>::infinity()) {
        out.finite = false;
        out.log_value = m;
        return out;
    }
    if (m == -std::numeric_limits<double>::infinity()) return out;
    Tolerance tol{0.0, 1e-13, 4000};
    Result r = integrate([&](double s) { return std::exp(g(s) - m); }, s0, s1, tol);
    if (!std::isfinite(r.value) || r.value < 0.0) {
        out.finite = false;
        out.log_value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.log_value = m + std::log(r.value);
    out.rel_error = r.value > 0 ? r.error / r.value : 0.0;
    return out;
}

LogIntegral log_integral_to_minus_infinity(const std::function<double(double)>& g, double L,
                                           int max_cells) {
    LogIntegral total;
    total.log_value = -std::numeric_limits<double>::infinity();
    double near = L;
    double width = 1.0;
    double rise_prev = 0.0;
    int growing = 0;
    for (int k = 0; k < max_cells; ++k) {
        const double far = L - width;
        LogIntegral cell = log_integral_finite(g, far, near);
        if (!cell.finite) {
            total.finite = false;
            total.log_value = std::numeric_limits<double>::infinity();
            return total;
        }
        const double before = total.log_value;
        total.log_value = log_sum_exp(total.log_value, cell.log_value);
        total.rel_error = std::max(total.rel_error, cell.rel_error);
        const double rise = g(far) - g(near);
        if (k >= 2 && rise < 0.0 && cell.log_value < total.log_value - 40.0) return total;
        // A power-type divergence doubles the rise across each doubled cell; logarithmic
        // growth keeps it bounded.
        if (rise > 30.0 && rise >= 1.9 * rise_prev && before > -std::numeric_limits<double>::infinity()) {
            if (++growing >= 8) break;
        } else {
            growing = 0;
        }
        rise_prev = rise;
        near = far;
        width *= 2.0;
    }
    total.finite = false;
    total.log_value = std::numeric_limits<double>::infinity();
    return total;
}

}  // namespace lipbvp::quad
