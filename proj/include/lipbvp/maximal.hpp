#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "lipbvp/geometry.hpp"
#include "lipbvp/lorentz.hpp"
#include "lipbvp/weights.hpp"

namespace lipbvp {

/// sup of (1/|I|) int_I |f| over intervals I containing x whose endpoints lie on the grid of
/// f or at x. Exact for step functions.
double hl_maximal(const SampledFunction& f, double x);

/// As hl_maximal with u-averages (1/u(I)) int_I |f| u; candidates with u(I) = 0 are skipped.
double base_maximal(const SampledFunction& f, const Weight& u, double x);

struct NTMaximal {
    std::vector<double> values;
    /// Samples where the field could not be evaluated (skipped).
    int failures = 0;
};

/// Per boundary point, max of |field| over the cone samples. The template's vertex is
/// replaced by each boundary point.
NTMaximal nt_maximal(const std::function<double(cplx)>& field, const std::vector<cplx>& boundary,
                     const NTCone& cone_template, double lipschitz = 0.0);

}  // namespace lipbvp
