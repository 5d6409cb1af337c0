#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipbvp/boundary_function.hpp"
#include "lipbvp/geometry.hpp"

namespace lipbvp {

using Vec2 = std::array<double, 2>;

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double partial)
        : std::runtime_error(what + " (partial sum " + std::to_string(partial) + ")"),
          partial_sum(partial) {}
    double partial_sum;
};

/// P_y * f(x) = (1/pi) int y f(t)/((x-t)^2 + y^2) dt.
double poisson(const BoundaryFunction& f, double x, double y);

/// Q_y * f(x) = (1/pi) int (x-t) f(t)/((x-t)^2 + y^2) dt.
double conjugate_poisson(const BoundaryFunction& f, double x, double y);

/// u_{f,N}(x, y) = -(1/pi) int log(sqrt((x-t)^2 + y^2)/(1+|t|)) f(t) dt.
double neumann_integral(const BoundaryFunction& f, double x, double y);

/// (-Q_y * f, -P_y * f).
Vec2 neumann_gradient(const BoundaryFunction& f, double x, double y);

/// Gradient of P_y * f through the weak derivative: (P_y * f', -Q_y * f').
Vec2 dirichlet_gradient(const BoundaryFunction& f, double x, double y);

/// Gradient of P_y * f by integrating the differentiated kernel against f itself.
Vec2 poisson_gradient_direct(const BoundaryFunction& f, double x, double y);

/// Boundary limit of Q_y * f (the conjugate function) for piecewise data.
double boundary_conjugate(const BoundaryFunction& f, double x);

struct HarmonicField {
    enum class Tag { Poisson, Neumann, ConjugatePair };
    Tag tag = Tag::Poisson;
    std::function<double(double, double)> value;
    std::function<Vec2(double, double)> gradient;
};

HarmonicField poisson_field(const BoundaryFunction& f);
HarmonicField neumann_field(const BoundaryFunction& f);
/// Q_y * f with gradient from the Cauchy-Riemann relations.
HarmonicField conjugate_field(const BoundaryFunction& f);

/// 5-point finite-difference Laplacian.
double fd_laplacian(const std::function<double(double, double)>& u, double x, double y, double h);
/// Central finite-difference gradient.
Vec2 fd_gradient(const std::function<double(double, double)>& u, double x, double y, double h);

/// g o Phi on R with derivative Re[(g' o Phi) Phi'].
BoundaryFunction weak_derivative_pullback(const CurveFunction& g, const ConformalMap& map);

/// (g' o Phi)(x) Phi'(x) as a complex number; its imaginary part vanishes for consistent data.
cplx pullback_derivative_complex(const CurveFunction& g, const ConformalMap& map, double x);

/// |int f phi' + int f' phi| for a piecewise-linear test function phi.
double weak_derivative_pairing(const BoundaryFunction& f, const BoundaryFunction& phi);

struct LogMajorization {
    double max_violation = -std::numeric_limits<double>::infinity();
    std::vector<double> violations;
    std::vector<std::size_t> skipped;
};

/// log|F(x,t)| - P_t * log|F|(x) at each point for F = P*f + iQ*f.
LogMajorization log_majorization_check(const BoundaryFunction& f,
                                       const std::vector<std::array<double, 2>>& points);

}  // namespace lipbvp
