#pragma once

#include <string>

#include "json.hpp"

#include "lipbvp/boundary_function.hpp"
#include "lipbvp/ranges.hpp"
#include "lipbvp/solvers.hpp"
#include "lipbvp/weights.hpp"

namespace lipbvp {

using Json = nlohmann::ordered_json;

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite numbers as numbers; +-inf as the strings "inf" / "-inf"; NaN as null.
Json number_json(double x);

/// "one", "power:b[,scale]", "power_log:b[,inner]", "log_cap[:inner]".
Weight weight_from_spec(const std::string& spec);
Weight weight_from_json(const Json& j);
Json to_json(const Weight& w);

/// "const:c", "indicator:a,b", "bump:center,width[,height]", "hat:a,c,b",
/// "pl:t0,v0,t1,v1,...", "atom:center,radius" (atom uses `atom_weight`).
BoundaryFunction datum_from_spec(const std::string& spec, const Weight& atom_weight = Weight::one());
/// {"type":"indicator","a":..,"b":..}, {"type":"bump","center":..,"width":..},
/// {"type":"piecewise_linear","knots":[..],"values":[..]}, {"type":"const","value":..},
/// {"type":"atom","center":..,"radius":..,"weight":<weight>}.
BoundaryFunction datum_from_json(const Json& j);
Json to_json(const BoundaryFunction& f);

Json to_json(const SolvabilityRange& r);
Json to_json(const SolvabilityReport& r);
Json to_json(const Diagnostics& d);
Json to_json(const BVPSolution& s);
Json to_json(const SprVerdict& v);
Json to_json(const ClassEstimate& e);

/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);
/// Shortest round-trip decimal form.
std::string csv_number(double x);

}  // namespace lipbvp
