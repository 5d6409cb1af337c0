#include "lipbvp/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lipbvp {

SampledFunction::SampledFunction(std::vector<double> e, std::vector<double> v)
    : edges(std::move(e)), values(std::move(v)) {
    if (edges.size() != values.size() + 1) throw DomainError("sampled function needs n+1 edges");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i + 1] > edges[i])) throw DomainError("sampled function edges must increase");
}

double SampledFunction::operator()(double x) const {
    if (values.empty() || x < edges.front() || x >= edges.back()) return 0.0;
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    return values[static_cast<std::size_t>(it - edges.begin()) - 1];
}

std::vector<double> SampledFunction::lengths() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = edges[i + 1] - edges[i];
    return out;
}

std::vector<double> SampledFunction::masses(const Weight& w) const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = lipbvp::integral(w, edges[i], edges[i + 1]);
    return out;
}

double SampledFunction::integral(double a, double b) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double lo = std::max(a, edges[i]);
        const double hi = std::min(b, edges[i + 1]);
        if (hi > lo) acc += values[i] * (hi - lo);
    }
    return acc;
}

double lorentz_norm(std::span<const double> values, std::span<const double> masses, double p,
                    LorentzQ q) {
    if (values.size() != masses.size()) throw DomainError("values and masses differ in size");
    if (!(p >= 1.0)) throw DomainError("Lorentz exponent must be >= 1");
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(values[a]) > std::abs(values[b]); });
    double cum = 0.0;
    double out = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const double v = std::abs(values[idx[k]]);
        if (v == 0.0) break;
        cum += masses[idx[k]];
        const bool last_of_level = k + 1 == idx.size() || std::abs(values[idx[k + 1]]) < v;
        if (!last_of_level) continue;
        const double next = k + 1 == idx.size() ? 0.0 : std::abs(values[idx[k + 1]]);
        const double lam = std::pow(cum, 1.0 / p);
        if (q == LorentzQ::Infinity)
            out = std::max(out, v * lam);
        else
            out += (v - next) * lam;
    }
    return out;
}

double lorentz_norm(const SampledFunction& f, const Weight& w, double p, LorentzQ q) {
    const auto m = f.masses(w);
    return lorentz_norm(f.values, m, p, q);
}

double lebesgue_norm(std::span<const double> values, std::span<const double> masses, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        acc += std::pow(std::abs(values[i]), p) * masses[i];
    return std::pow(acc, 1.0 / p);
}

}  // namespace lipbvp
