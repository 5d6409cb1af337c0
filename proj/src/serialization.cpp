#include "lipbvp/serialization.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace lipbvp {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_number(const std::string& s, const std::string& spec) {
    double x = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && *first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last || !std::isfinite(x))
        throw SpecError("bad number '" + s + "' in spec '" + spec + "'");
    return x;
}

std::pair<std::string, std::vector<double>> parse_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        for (const auto& tok : split(spec.substr(colon + 1), ',')) args.push_back(parse_number(tok, spec));
    }
    return {head, args};
}

void require_args(const std::string& spec, const std::vector<double>& args, std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
        throw SpecError("wrong number of arguments in spec '" + spec + "'");
}

double get_number(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw SpecError(std::string("missing numeric field '") + key + "'");
    return j.at(key).get<double>();
}

double get_number_or(const Json& j, const char* key, double fallback) {
    return j.contains(key) ? get_number(j, key) : fallback;
}

std::vector<double> get_array(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw SpecError(std::string("missing array field '") + key + "'");
    std::vector<double> out;
    for (const auto& x : j.at(key)) {
        if (!x.is_number()) throw SpecError(std::string("non-numeric entry in '") + key + "'");
        out.push_back(x.get<double>());
    }
    return out;
}

Json numbers_json(const std::vector<double>& xs) {
    Json a = Json::array();
    for (double x : xs) a.push_back(number_json(x));
    return a;
}

}  // namespace

Json number_json(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

Weight weight_from_spec(const std::string& spec) {
    auto [head, args] = parse_spec(spec);
    if (head == "one") {
        require_args(spec, args, 0, 0);
        return Weight::one();
    }
    if (head == "power") {
        require_args(spec, args, 1, 2);
        if (args.size() == 2 && args[1] <= 0.0) throw SpecError("weight scale must be positive");
        return Weight::power(args[0], args.size() == 2 ? args[1] : 1.0);
    }
    if (head == "power_log") {
        require_args(spec, args, 1, 2);
        if (args.size() == 2 && args[1] <= 0.0) throw SpecError("power_log inner exponent must be positive");
        return Weight::power_log(args[0], args.size() == 2 ? args[1] : 1.0);
    }
    if (head == "log_cap") {
        require_args(spec, args, 0, 1);
        if (args.size() == 1 && args[0] <= 0.0) throw SpecError("log_cap inner factor must be positive");
        return Weight::log_cap(args.empty() ? 1.0 : args[0]);
    }
    throw SpecError("unknown weight spec '" + spec + "'");
}

Weight weight_from_json(const Json& j) {
    if (j.is_string()) return weight_from_spec(j.get<std::string>());
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw SpecError("weight must be a spec string or an object with a 'type'");
    const std::string type = j.at("type").get<std::string>();
    const double scale = get_number_or(j, "scale", 1.0);
    if (scale <= 0.0) throw SpecError("weight scale must be positive");
    if (type == "one") return Weight::one().scaled(scale);
    if (type == "power") return Weight::power(get_number(j, "beta"), scale);
    if (type == "power_log") return Weight::power_log(get_number(j, "beta"), get_number_or(j, "inner", 1.0), scale);
    if (type == "log_cap") return Weight::log_cap(get_number_or(j, "inner", 1.0), scale);
    throw SpecError("unknown weight type '" + type + "'");
}

Json to_json(const Weight& w) {
    Json j;
    switch (w.kind()) {
        case Weight::Kind::Power:
            j["type"] = "power";
            j["beta"] = number_json(w.beta());
            break;
        case Weight::Kind::PowerLog:
            j["type"] = "power_log";
            j["beta"] = number_json(w.beta());
            j["inner"] = number_json(w.inner());
            break;
        case Weight::Kind::LogCap:
            j["type"] = "log_cap";
            j["inner"] = number_json(w.inner());
            break;
        case Weight::Kind::Product: j["type"] = "product"; break;
        case Weight::Kind::Sampled: j["type"] = "sampled"; break;
        case Weight::Kind::Custom: j["type"] = "custom"; break;
    }
    j["scale"] = number_json(w.scale());
    j["description"] = w.describe();
    return j;
}

BoundaryFunction datum_from_spec(const std::string& spec, const Weight& atom_weight) {
    auto [head, args] = parse_spec(spec);
    if (head == "const") {
        require_args(spec, args, 1, 1);
        return BoundaryFunction::constant(args[0]);
    }
    if (head == "indicator") {
        require_args(spec, args, 2, 3);
        if (!(args[0] < args[1])) throw SpecError("indicator needs a < b");
        return BoundaryFunction::indicator(args[0], args[1], args.size() == 3 ? args[2] : 1.0);
    }
    if (head == "bump") {
        if (args.empty()) args = {0.0, 1.0};
        require_args(spec, args, 2, 3);
        if (!(args[1] > 0.0)) throw SpecError("bump width must be positive");
        return BoundaryFunction::bump(args[0], args[1], args.size() == 3 ? args[2] : 1.0);
    }
    if (head == "hat") {
        require_args(spec, args, 3, 3);
        if (!(args[0] < args[1] && args[1] < args[2])) throw SpecError("hat needs a < c < b");
        return BoundaryFunction::hat(args[0], args[1], args[2]);
    }
    if (head == "pl") {
        if (args.size() < 4 || args.size() % 2 != 0) throw SpecError("pl needs pairs t,v (at least two)");
        std::vector<double> knots, values;
        for (std::size_t i = 0; i < args.size(); i += 2) {
            knots.push_back(args[i]);
            values.push_back(args[i + 1]);
        }
        for (std::size_t i = 1; i < knots.size(); ++i)
            if (!(knots[i - 1] < knots[i])) throw SpecError("pl knots must increase");
        return BoundaryFunction::piecewise_linear(knots, values);
    }
    if (head == "atom") {
        require_args(spec, args, 2, 2);
        if (!(args[1] > 0.0)) throw SpecError("atom radius must be positive");
        return BoundaryFunction::atom(args[0], args[1], atom_weight);
    }
    throw SpecError("unknown datum spec '" + spec + "'");
}

BoundaryFunction datum_from_json(const Json& j) {
    if (j.is_string()) return datum_from_spec(j.get<std::string>());
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw SpecError("datum must be a spec string or an object with a 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "const") return BoundaryFunction::constant(get_number(j, "value"));
    if (type == "indicator") {
        double a = get_number(j, "a"), b = get_number(j, "b");
        if (!(a < b)) throw SpecError("indicator needs a < b");
        return BoundaryFunction::indicator(a, b, get_number_or(j, "height", 1.0));
    }
    if (type == "bump") {
        double w = get_number_or(j, "width", 1.0);
        if (!(w > 0.0)) throw SpecError("bump width must be positive");
        return BoundaryFunction::bump(get_number_or(j, "center", 0.0), w, get_number_or(j, "height", 1.0));
    }
    if (type == "piecewise_constant") {
        auto edges = get_array(j, "edges");
        auto values = get_array(j, "values");
        if (edges.size() != values.size() + 1) throw SpecError("piecewise_constant needs |edges| = |values| + 1");
        return BoundaryFunction::piecewise_constant(edges, values);
    }
    if (type == "piecewise_linear") {
        auto knots = get_array(j, "knots");
        auto values = get_array(j, "values");
        if (knots.size() != values.size() || knots.size() < 2)
            throw SpecError("piecewise_linear needs matching knots and values");
        return BoundaryFunction::piecewise_linear(knots, values);
    }
    if (type == "atom") {
        Weight w = j.contains("weight") ? weight_from_json(j.at("weight")) : Weight::one();
        double r = get_number(j, "radius");
        if (!(r > 0.0)) throw SpecError("atom radius must be positive");
        return BoundaryFunction::atom(get_number(j, "center"), r, w);
    }
    throw SpecError("unknown datum type '" + type + "'");
}

Json to_json(const BoundaryFunction& f) {
    Json j;
    switch (f.kind()) {
        case BoundaryFunction::Kind::Constant:
            j["type"] = "const";
            j["value"] = number_json(f.constant_value());
            break;
        case BoundaryFunction::Kind::PiecewiseConstant:
            j["type"] = "piecewise_constant";
            j["edges"] = numbers_json(f.nodes());
            j["values"] = numbers_json(f.values());
            break;
        case BoundaryFunction::Kind::PiecewiseLinear:
            j["type"] = "piecewise_linear";
            j["knots"] = numbers_json(f.nodes());
            j["values"] = numbers_json(f.values());
            break;
        case BoundaryFunction::Kind::Bump: j["type"] = "bump"; break;
        case BoundaryFunction::Kind::Generic: j["type"] = "generic"; break;
    }
    j["label"] = f.label();
    return j;
}

Json to_json(const SolvabilityRange& r) {
    Json j;
    j["p_phi"] = number_json(r.p_phi);
    j["p_minus"] = number_json(r.p_minus);
    j["p_plus"] = number_json(r.p_plus);
    j["empty"] = r.empty;
    Json f;
    f["dirichlet_restricted"] = r.flags.dirichlet_restricted;
    f["h1"] = r.flags.h1;
    f["spr_minus"] = r.flags.spr_minus;
    f["spr_plus"] = r.flags.spr_plus;
    f["well_defined_minus"] = r.flags.well_defined_minus;
    j["flags"] = f;
    return j;
}

Json to_json(const SolvabilityReport& r) {
    Json j;
    j["p_phi"] = number_json(r.p_phi);
    j["dirichlet_restricted_endpoint"] = r.dirichlet_restricted_endpoint;
    j["p_minus"] = number_json(r.range.p_minus);
    j["p_plus"] = number_json(r.range.p_plus);
    j["empty"] = r.range.empty;
    j["h1"] = r.h1;
    j["h1_corollary_discrepancy"] = r.h1_corollary_discrepancy;
    j["spr_minus"] = r.spr_minus;
    j["spr_plus"] = r.spr_plus;
    j["well_defined_minus"] = r.well_defined_minus;
    j["duality_checked"] = r.duality_checked;
    j["duality_exceptions"] = r.duality_exceptions;
    j["notes"] = r.notes;
    return j;
}

Json to_json(const Diagnostics& d) {
    Json j;
    j["nt_max_norm"] = number_json(d.nt_max_norm);
    j["datum_norm"] = number_json(d.datum_norm);
    j["ratio"] = number_json(d.ratio);
    j["status"] = d.status;
    j["guaranteed"] = d.guaranteed;
    j["verdict"] = d.verdict;
    j["boundary_error"] = number_json(d.boundary_error);
    j["bridge_error"] = number_json(d.bridge_error);
    j["transfer_identity_error"] = number_json(d.transfer_identity_error);
    j["corpus_size"] = d.corpus_size;
    j["failed_samples"] = d.failed_samples;
    return j;
}

Json to_json(const BVPSolution& s) {
    Json j;
    j["problem"] = to_string(s.problem);
    j["mode"] = to_string(s.space);
    j["p"] = number_json(s.p);
    j["cone_alpha"] = s.map.cone_alpha ? number_json(*s.map.cone_alpha) : Json(nullptr);
    j["datum"] = s.datum_label;
    j["half_plane_datum"] = to_json(s.half_plane_datum);
    j["diagnostics"] = to_json(s.diagnostics);
    return j;
}

Json to_json(const SprVerdict& v) {
    Json j;
    j["holds"] = v.holds;
    j["v_ainf"] = v.v_ainf;
    j["ratio_finite"] = v.ratio_finite;
    j["branch1"] = v.branch1;
    j["branch2"] = v.branch2;
    j["which_branch"] = v.which_branch;
    j["ratio_condition_sup"] = number_json(v.ratio_condition_sup);
    j["diagnostic"] = v.diagnostic;
    return j;
}

Json to_json(const ClassEstimate& e) {
    Json j;
    j["value"] = number_json(e.value);
    j["divergent"] = e.divergent;
    j["diagnostic"] = e.diagnostic;
    j["running_sup"] = numbers_json(e.running_sup);
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

}  // namespace lipbvp
