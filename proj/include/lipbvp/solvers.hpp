#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lipbvp/boundary_function.hpp"
#include "lipbvp/geometry.hpp"
#include "lipbvp/harmonic.hpp"
#include "lipbvp/ranges.hpp"
#include "lipbvp/weights.hpp"

namespace lipbvp {

enum class Problem { Dirichlet, Neumann, Regularity };
enum class Space { Lp, Lorentz, H1 };

std::string to_string(Problem p);
std::string to_string(Space s);

/// T_D(g) = g o Phi. Exact cell structure is kept for piecewise-constant data.
BoundaryFunction transfer_dirichlet_datum(const CurveFunction& g, const ConformalMap& map);

/// T_N(g) = (g o Phi)|Phi'|.
BoundaryFunction transfer_neumann_datum(const CurveFunction& g, const ConformalMap& map);

/// Finite combination of atoms on the boundary curve, given in the graph parameter.
struct AtomicDatum {
    struct Atom {
        double center = 0.0;  ///< parameter of the centre
        double radius = 1.0;  ///< parameter half-width
        BoundaryFunction values = BoundaryFunction::zero();
    };
    std::vector<Atom> atoms;
    std::vector<double> coefficients;

    /// sum lambda_j a_j as a piecewise-constant parameter datum.
    BoundaryFunction sum() const;
    double coefficient_norm() const;
};

/// Two-valued atom for nu ds on the parameter ball [center - radius, center + radius].
AtomicDatum::Atom make_atom(double center, double radius, const Weight& nu, const GraphDomain& domain);

struct AtomCheck {
    bool support_ok = false;
    bool bound_ok = false;
    double mean = 0.0;  ///< int a nu ds
    bool ok(double tol = 1e-10) const { return support_ok && bound_ok && std::abs(mean) <= tol; }
};
AtomCheck check_atom(const AtomicDatum::Atom& atom, const Weight& nu, const GraphDomain& domain);

struct Diagnostics {
    double nt_max_norm = 0.0;
    double datum_norm = 0.0;
    /// NaN when degenerate (0/0).
    double ratio = 0.0;
    /// "ok" or "degenerate".
    std::string status = "ok";
    bool guaranteed = false;
    std::string verdict;
    /// Max boundary-condition error at continuity points.
    double boundary_error = 0.0;
    /// Regularity: max relative discrepancy between the two gradient routes.
    double bridge_error = 0.0;
    /// Regularity: max | |T_D(g)'| - |T_N(g')| | at sample points.
    double transfer_identity_error = 0.0;
    int corpus_size = 0;
    int failed_samples = 0;
};

struct SolveOptions {
    double aperture = 0.3;
    int boundary_points = 48;
    /// Cone heights relative to the distance scale of each boundary point.
    double cone_r_min = 1e-3;
    double cone_r_max = 1e2;
    int levels_per_decade = 4;
    int rays = 5;
    bool diagnostics = true;
    /// Lorentz solves at p_- need the caller's opt-in (no closed-form well-definedness).
    bool allow_p_minus = false;
    double boundary_offset = 1e-5;
};

struct BVPSolution {
    Problem problem = Problem::Dirichlet;
    Space space = Space::Lp;
    double p = 2.0;
    ConformalMap map;
    /// Datum on R after transfer.
    BoundaryFunction half_plane_datum = BoundaryFunction::zero();
    /// Harmonic function on the upper half-plane.
    HarmonicField field;
    std::string datum_label;
    Diagnostics diagnostics;

    /// v(z) = u(Phi^{-1}(z)) for z in the domain.
    double value(cplx z) const;
    /// Gradient of v through G = F(w)/Phi'(w), F = d1 u - i d2 u, w = Phi^{-1}(z).
    Vec2 gradient(cplx z) const;
};

BVPSolution solve_dirichlet(const ConformalMap& map, const Weight& nu, const CurveFunction& g, double p,
                            Space space = Space::Lp, const SolveOptions& opt = {});

/// mode Lp or Lorentz with datum g, or H1 with an atomic datum.
BVPSolution solve_neumann(const ConformalMap& map, const Weight& nu, const CurveFunction& g, double p,
                          Space space = Space::Lp, const SolveOptions& opt = {});
BVPSolution solve_neumann_atomic(const ConformalMap& map, const Weight& nu, const AtomicDatum& datum,
                                 const SolveOptions& opt = {});

BVPSolution solve_regularity(const ConformalMap& map, const Weight& nu, const CurveFunction& g, double p,
                             Space space = Space::Lp, const SolveOptions& opt = {});

struct SolvabilityReport {
    double p_phi = 1.0;
    bool dirichlet_restricted_endpoint = false;
    SolvabilityRange range;
    bool h1 = false;
    bool h1_corollary_discrepancy = false;
    bool spr_minus = false;
    bool spr_plus = false;
    bool well_defined_minus = false;
    int duality_checked = 0;
    int duality_exceptions = 0;
    std::vector<std::string> notes;
};

SolvabilityReport solvability_report(const ConformalMap& map, const Weight& nu);

/// Dirichlet(p, nu) guaranteed implies Neumann(p', nu^{1-p'}) guaranteed; returns the number
/// of exponents in `ps` violating the implication and the number checked.
std::pair<int, int> duality_implication(const ConformalMap& map, const Weight& nu,
                                        const std::vector<double>& ps);

}  // namespace lipbvp
