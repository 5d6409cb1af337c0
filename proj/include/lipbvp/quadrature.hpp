#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace lipbvp::quad {

using Integrand = std::function<double(double)>;

struct Result {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    int evaluations = 0;

    Result& operator+=(const Result& o) {
        value += o.value;
        error += o.error;
        converged = converged && o.converged;
        evaluations += o.evaluations;
        return *this;
    }
};

struct Tolerance {
    double abs = 1e-13;
    double rel = 1e-12;
    int max_intervals = 4000;
};

/// Single 15-point Kronrod panel with the embedded 7-point Gauss error estimate.
Result kronrod15(const Integrand& f, double a, double b);

/// Globally adaptive Gauss-Kronrod (G7/K15) on a finite interval.
Result integrate(const Integrand& f, double a, double b, const Tolerance& tol = {});

/// Sums `integrate` over consecutive panels of a sorted breakpoint list.
Result integrate_panels(const Integrand& f, std::span<const double> points,
                        const Tolerance& tol = {});

/// Panels geometrically graded toward `a` (ratio 1/2), for integrable endpoint
/// singularities. `levels` bounds the number of halvings.
Result integrate_graded(const Integrand& f, double a, double b, const Tolerance& tol = {},
                        int levels = 60);

/// Integral over [a, +inf) via geometric panels [a + s 2^k, a + s 2^{k+1}].
/// Stops when the panel contributions fall below the tolerance; flags
/// non-convergence otherwise.
Result integrate_to_infinity(const Integrand& f, double a, double scale,
                             const Tolerance& tol = {}, int max_panels = 80);

/// Tanh-sinh on [a, b]; handles integrable endpoint singularities such as logs.
Result tanh_sinh(const Integrand& f, double a, double b, double tol = 1e-13);

/// Logarithm of a positive integral, computed without overflow.
struct LogIntegral {
    double log_value = -std::numeric_limits<double>::infinity();
    bool finite = true;
    double rel_error = 0.0;
};

/// log of the integral of exp(g(s)) ds over s in (-inf, L], where the integrand
/// is expected to decay as s -> -inf. Cells [L - 2^{k+1}, L - 2^k] in s are
/// integrated with max-normalization; non-convergence after `max_cells` marks
/// the integral as non-finite.
LogIntegral log_integral_to_minus_infinity(const std::function<double(double)>& g, double L,
                                           int max_cells = 64);

/// log of the integral of exp(g(s)) ds over [s0, s1] (finite).
LogIntegral log_integral_finite(const std::function<double(double)>& g, double s0, double s1);

double log_sum_exp(double a, double b);

}  // namespace lipbvp::quad
