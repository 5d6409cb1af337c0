#pragma once

#include <span>
#include <vector>

#include "lipbvp/weights.hpp"

namespace lipbvp {

/// Step function on consecutive cells [edges[i], edges[i+1]) with values[i]; zero elsewhere.
struct SampledFunction {
    std::vector<double> edges;
    std::vector<double> values;

    SampledFunction() = default;
    SampledFunction(std::vector<double> edges, std::vector<double> values);

    std::size_t cells() const { return values.size(); }
    double operator()(double x) const;
    /// Lebesgue cell lengths.
    std::vector<double> lengths() const;
    /// Cell masses w(cell).
    std::vector<double> masses(const Weight& w) const;
    /// Integral of f over [a, b] (exact for the step function).
    double integral(double a, double b) const;
};

enum class LorentzQ { One, Infinity };

/// Lorentz norm of the discrete distribution with |values[i]| carried by masses[i]:
/// q = 1 gives int_0^inf lambda(y)^{1/p} dy, q = inf gives sup_y y lambda(y)^{1/p}.
double lorentz_norm(std::span<const double> values, std::span<const double> masses, double p,
                    LorentzQ q);

/// Lorentz norm of a step function with respect to w.
double lorentz_norm(const SampledFunction& f, const Weight& w, double p, LorentzQ q);

/// (sum |values|^p masses)^{1/p}.
double lebesgue_norm(std::span<const double> values, std::span<const double> masses, double p);

}  // namespace lipbvp
