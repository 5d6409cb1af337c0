#include "lipbvp/maximal.hpp"

#include <algorithm>
#include <cmath>

namespace lipbvp {

namespace {

/// Grid of f with x inserted, and per-cell integrals of |f| (and of |f| u, u when given).
struct Cells {
    std::vector<double> edges;
    std::vector<double> fmass;
    std::vector<double> umass;
    std::size_t x_index = 0;  // edges[x_index] == x
};

Cells build(const SampledFunction& f, const Weight* u, double x) {
    Cells c;
    c.edges = f.edges;
    if (c.edges.empty()) c.edges = {x};
    if (x < c.edges.front()) c.edges.insert(c.edges.begin(), x);
    if (x > c.edges.back()) c.edges.push_back(x);
    auto it = std::lower_bound(c.edges.begin(), c.edges.end(), x);
    if (*it != x) it = c.edges.insert(it, x);
    c.x_index = static_cast<std::size_t>(it - c.edges.begin());
    const std::size_t n = c.edges.size() - 1;
    c.fmass.resize(n);
    c.umass.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = c.edges[i], b = c.edges[i + 1];
        const double v = std::abs(f(0.5 * (a + b)));
        const double m = u ? integral(*u, a, b) : b - a;
        c.umass[i] = m;
        c.fmass[i] = v * m;
    }
    return c;
}

double sup_average(const Cells& c) {
    const std::size_t n = c.fmass.size();
    std::vector<double> pf(n + 1, 0.0), pu(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        pf[i + 1] = pf[i] + c.fmass[i];
        pu[i + 1] = pu[i] + c.umass[i];
    }
    double best = 0.0;
    for (std::size_t i = 0; i <= c.x_index; ++i) {
        for (std::size_t j = c.x_index; j <= n; ++j) {
            if (j == i) continue;
            const double den = pu[j] - pu[i];
            if (!(den > 0.0) || !std::isfinite(den)) continue;
            best = std::max(best, (pf[j] - pf[i]) / den);
        }
    }
    return best;
}

}  // namespace

double hl_maximal(const SampledFunction& f, double x) { return sup_average(build(f, nullptr, x)); }

double base_maximal(const SampledFunction& f, const Weight& u, double x) {
    return sup_average(build(f, &u, x));
}

NTMaximal nt_maximal(const std::function<double(cplx)>& field, const std::vector<cplx>& boundary,
                     const NTCone& cone_template, double lipschitz) {
    NTMaximal out;
    out.values.reserve(boundary.size());
    for (const cplx& xi : boundary) {
        NTCone cone = cone_template;
        cone.vertex = xi;
        double best = 0.0;
        for (const cplx& z : nt_cone_samples(cone, lipschitz)) {
            double v;
            try {
                v = std::abs(field(z));
            } catch (const std::exception&) {
                ++out.failures;
                continue;
            }
            if (!std::isfinite(v)) {
                ++out.failures;
                continue;
            }
            best = std::max(best, v);
        }
        out.values.push_back(best);
    }
    return out;
}

}  // namespace lipbvp
