#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lipbvp {

using cplx = std::complex<double>;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Region above the graph of a Lipschitz function, {z : Im z > gamma(Re z)}.
class GraphDomain {
public:
    GraphDomain(std::function<double(double)> gamma, double lipschitz,
                std::function<double(double)> gamma_prime = {},
                std::vector<double> kinks = {});

    /// The half-plane, gamma = 0.
    static GraphDomain half_plane();

    double gamma(double t) const { return gamma_(t); }
    /// Symbolic derivative when supplied, else a central difference.
    double gamma_prime(double t) const;
    double lipschitz() const { return lipschitz_; }
    const std::vector<double>& kinks() const { return kinks_; }

    /// eta(t) = t + i gamma(t).
    cplx eta(double t) const { return {t, gamma_(t)}; }
    /// eta'(t) = 1 + i gamma'(t).
    cplx eta_prime(double t) const { return {1.0, gamma_prime(t)}; }
    /// Arc-length density |eta'(t)|.
    double arc_density(double t) const;
    bool contains(cplx z) const { return z.imag() > gamma_(z.real()); }

    /// Largest |gamma(s)-gamma(t)|/|s-t| over consecutive and random pairs of `ts`.
    double empirical_lipschitz(const std::vector<double>& ts) const;

private:
    std::function<double(double)> gamma_;
    std::function<double(double)> gamma_prime_;
    double lipschitz_;
    std::vector<double> kinks_;
};

/// Cone of opening angle alpha*pi, symmetric about the positive imaginary axis.
class ConeDomain {
public:
    explicit ConeDomain(double alpha);

    double alpha() const { return alpha_; }
    /// |cot(alpha pi / 2)|.
    double lipschitz() const;
    /// gamma(t) = |t| cot(alpha pi / 2).
    GraphDomain graph() const;

private:
    double alpha_;
};

/// Evaluator bundle for a conformal map of the upper half-plane onto a graph domain.
struct ConformalMap {
    GraphDomain domain = GraphDomain::half_plane();
    std::function<cplx(cplx)> forward;
    std::function<cplx(cplx)> derivative;
    std::function<cplx(cplx)> inverse;
    /// Phi_1(x) = Re Phi(x) on the boundary, and its inverse.
    std::function<double(double)> phi1;
    std::function<double(double)> phi1_inverse;
    /// Points of R where |Phi'| is singular or vanishes.
    std::vector<double> singular_points;
    /// Set for cone maps; enables closed-form weight calculus.
    std::optional<double> cone_alpha;

    cplx boundary(double x) const { return forward(cplx(x, 0.0)); }
    cplx boundary_derivative(double x) const { return derivative(cplx(x, 0.0)); }
    double boundary_derivative_modulus(double x) const { return std::abs(boundary_derivative(x)); }
};

/// Phi(z) = e^{i(1-alpha)pi/2} z^alpha with the branch cut {iy : y <= 0}.
ConformalMap cone_conformal_map(const ConeDomain& cone);

/// Identity map of the half-plane.
ConformalMap identity_map();

/// z^a with arg z taken in (-pi/2, 3pi/2].
cplx cut_power(cplx z, double a);

/// Non-tangential cone {z : Im z > Im xi, |Re z - Re xi| < tan(aperture)(Im z - Im xi)}
/// with a sampling net of geometric heights and interior rays.
struct NTCone {
    cplx vertex{0.0, 0.0};
    double aperture = 0.5;
    double r_min = 1e-4;
    double r_max = 1e2;
    int levels_per_decade = 24;
    int rays = 9;
    /// Overrides the geometric heights when nonempty.
    std::vector<double> heights;

    bool contains(cplx z) const;
};

/// Throws DomainError if aperture is not in (0, arctan(1/L)).
void check_aperture(double aperture, double lipschitz);

/// Sample points of the cone sorted by distance from the vertex.
std::vector<cplx> nt_cone_samples(const NTCone& cone, double lipschitz = 0.0);

/// Heights of the geometric net, r_min 10^{k / levels_per_decade} up to r_max.
std::vector<double> cone_heights(const NTCone& cone);

/// Arc length of eta over [a, b].
double arc_measure(const GraphDomain& domain, double a, double b);

/// Aperture gamma_ap such that Phi maps Gamma_ap(x) into Gamma_{gamma_ap}(Phi(x)) for every
/// boundary x, for cone maps with alpha in (0,1). Uses homogeneity of Phi to reduce to
/// x in {-1, 0, 1} and maximizes the image angle over a dense net; `margin` is added.
double cone_image_aperture(double alpha, double aperture, double margin = 1e-3);

}  // namespace lipbvp
