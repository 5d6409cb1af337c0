#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lipbvp/weight_classes.hpp"
#include "lipbvp/weights.hpp"

namespace lipbvp {

/// Integrability certificates; each entry is the computed integral (infinity when divergent).
struct Certificates {
    double poisson_class = 0.0;    ///< int |f|/(1+x^2)
    double neumann_class = 0.0;    ///< int |f|/(1+|x|)
    double derivative_class = 0.0; ///< int |f'|/(1+|x|), NaN when no derivative
    bool poisson_finite() const;
    bool neumann_finite() const;
    bool derivative_finite() const;
};

/// Real function on R (boundary datum). Piecewise-constant and piecewise-linear data carry
/// exact cell structure used by closed-form kernels; other data are evaluated pointwise.
class BoundaryFunction {
public:
    enum class Kind { Constant, PiecewiseConstant, PiecewiseLinear, Bump, Generic };

    static BoundaryFunction constant(double c);
    static BoundaryFunction zero() { return constant(0.0); }
    /// values[i] on [edges[i], edges[i+1]), zero outside.
    static BoundaryFunction piecewise_constant(std::vector<double> edges, std::vector<double> values);
    static BoundaryFunction indicator(double a, double b, double height = 1.0);
    /// Linear interpolation of (knots[i], values[i]), zero outside [knots.front(), knots.back()].
    static BoundaryFunction piecewise_linear(std::vector<double> knots, std::vector<double> values);
    /// Hat of height 1 on [a, b] peaking at c.
    static BoundaryFunction hat(double a, double c, double b);
    /// height * exp(1 - 1/(1 - s^2)), s = (t - center)/width, on |s| < 1.
    static BoundaryFunction bump(double center, double width, double height = 1.0);
    /// Pointwise datum. `support` is a compact support (or effective support for fast decay),
    /// `breakpoints` lists jumps or kinks, `singular` lists integrable singularities.
    static BoundaryFunction generic(std::function<double(double)> f,
                                    std::function<double(double)> derivative,
                                    std::optional<std::pair<double, double>> support,
                                    std::vector<double> breakpoints = {},
                                    std::vector<double> singular = {}, std::string label = "generic");
    /// Two-valued atom for the measure w on the ball [center - radius, center + radius]:
    /// lambda (1_{I1}/w(I1) - 1_{I2}/w(I2)), lambda = min(w(I1), w(I2))/w(B).
    static BoundaryFunction atom(double center, double radius, const Weight& w);

    Kind kind() const { return kind_; }
    double operator()(double t) const;
    bool has_derivative() const;
    /// Weak derivative. Throws UnsupportedError for jumps or when no derivative is available.
    BoundaryFunction derivative() const;
    std::optional<std::pair<double, double>> support() const { return support_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& singular_points() const { return singular_; }
    /// Cell data for piecewise kinds (edges/values or knots/values).
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }
    double constant_value() const { return c_; }
    /// Pointwise evaluator of f' when available.
    double derivative_at(double t) const;
    const std::string& label() const { return label_; }

    BoundaryFunction scaled(double c) const;
    BoundaryFunction plus(const BoundaryFunction& other) const;

    /// Computes the three certificates by quadrature.
    Certificates certificates() const;

private:
    Kind kind_ = Kind::Constant;
    double c_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> values_;
    double center_ = 0.0, width_ = 1.0, height_ = 1.0;
    std::function<double(double)> fn_;
    std::function<double(double)> dfn_;
    std::optional<std::pair<double, double>> support_;
    std::vector<double> breakpoints_;
    std::vector<double> singular_;
    std::string label_;
};

/// Integral of g over the panels of f: f's support (or R with tails), split at f's
/// breakpoints and singular points and at `extra`. Panels ending at a singular point use
/// tanh-sinh.
quad::Result integrate_structure(const BoundaryFunction& f, const std::function<double(double)>& g,
                                 const std::vector<double>& extra = {},
                                 const std::vector<double>& singular = {},
                                 const quad::Tolerance& tol = {});

/// Integral of f against kernel(t) over R, split at the breakpoints of f and at `extra`
/// points; tails outside the support of f are skipped, otherwise integrated to infinity.
quad::Result integrate_against(const BoundaryFunction& f, const std::function<double(double)>& kernel,
                               std::vector<double> extra = {}, const quad::Tolerance& tol = {});

/// As above; panels ending at a point of `singular` use tanh-sinh.
quad::Result integrate_against_singular(const BoundaryFunction& f,
                                        const std::function<double(double)>& kernel,
                                        std::vector<double> extra, std::vector<double> singular,
                                        const quad::Tolerance& tol = {});

/// int |f|^p w over R (or over the support), by quadrature.
double weighted_lp_norm(const BoundaryFunction& f, const Weight& w, double p);

/// Function on the boundary curve of a graph domain, given in the graph parameter t
/// (g(eta(t))), with optional derivative d/dt g(eta(t)).
struct CurveFunction {
    BoundaryFunction param;

    /// Weak derivative g' on the curve: (g o eta)'(t) / (1 + i gamma'(t)).
    cplx derivative(const GraphDomain& domain, double t) const;
};

/// ||g||_{L^p(curve, nu ds)} by quadrature in the parameter.
double curve_lp_norm(const CurveFunction& g, const GraphDomain& domain, const Weight& nu, double p);

/// Exact Lorentz norm of a piecewise-constant curve datum with respect to nu ds.
double curve_lorentz_norm(const CurveFunction& g, const GraphDomain& domain, const Weight& nu,
                          double p, bool weak);

/// Exact Lorentz norm of a piecewise-constant datum on R with respect to w.
double lorentz_norm(const BoundaryFunction& f, const Weight& w, double p, bool weak);

}  // namespace lipbvp
