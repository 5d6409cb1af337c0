#include "lipbvp/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "lipbvp/acceptance.hpp"
#include "lipbvp/parallel.hpp"
#include "lipbvp/serialization.hpp"
#include "lipbvp/solvers.hpp"
#include "lipbvp/sparse.hpp"

namespace lipbvp {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WeightArgs {
    std::optional<double> beta;
    std::string spec;

    Weight weight() const {
        if (beta && !spec.empty()) throw UsageError("--beta and --weight are mutually exclusive");
        if (!spec.empty()) return weight_from_spec(spec);
        return Weight::power(beta.value_or(0.0));
    }
    std::string label() const { return spec.empty() ? "power:" + csv_number(beta.value_or(0.0)) : spec; }
};

void add_weight_options(CLI::App* app, WeightArgs& w) {
    app->add_option("--beta", w.beta, "Exponent of nu = |xi|^beta");
    app->add_option("--weight", w.spec, "Weight spec: one, power:b, power_log:b[,inner], log_cap[:inner]");
}

ConformalMap cone_map(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw UsageError("--alpha must lie in (0, 2)");
    return cone_conformal_map(ConeDomain(alpha));
}

/// Writes to `path` when set, else to `out`.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(10) << x;
    return s.str();
}

std::vector<double> split_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("bad number list '" + s + "'");
        }
    }
    return out;
}

// range --------------------------------------------------------------------------------------

struct RangeArgs {
    double alpha = 1.0;
    WeightArgs weight;
    bool json = false;
    bool sweep = false;
    std::string alphas = "0.25,0.5,0.75,1,1.25,1.5,1.75";
    std::string betas = "-0.9,-0.5,0,0.5,1,2";
    std::string out_path;
};

int cmd_range(const RangeArgs& a, std::ostream& out) {
    if (a.sweep) {
        const auto alphas = split_numbers(a.alphas), betas = split_numbers(a.betas);
        for (double al : alphas) cone_map(al);
        std::vector<SolvabilityReport> rows(alphas.size() * betas.size());
        parallel_for(rows.size(), [&](std::size_t i) {
            rows[i] = solvability_report(cone_map(alphas[i / betas.size()]), Weight::power(betas[i % betas.size()]));
        });
        std::string csv =
            "alpha,beta,p_phi,dirichlet_restricted,p_minus,p_plus,empty,h1,spr_minus,spr_plus,well_defined_minus\n";
        auto b = [](bool x) { return std::string(x ? "true" : "false"); };
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            csv += csv_number(alphas[i / betas.size()]) + "," + csv_number(betas[i % betas.size()]) + "," +
                   csv_number(r.p_phi) + "," + b(r.dirichlet_restricted_endpoint) + "," +
                   csv_number(r.range.p_minus) + "," + csv_number(r.range.p_plus) + "," + b(r.range.empty) + "," +
                   b(r.h1) + "," + b(r.spr_minus) + "," + b(r.spr_plus) + "," + b(r.well_defined_minus) + "\n";
        }
        emit(csv, a.out_path, out);
        return kExitOk;
    }
    const auto map = cone_map(a.alpha);
    const Weight nu = a.weight.weight();
    const auto r = solvability_report(map, nu);
    if (a.json) {
        Json j;
        j["alpha"] = a.alpha;
        j["weight"] = a.weight.label();
        j.update(to_json(r));
        emit(j.dump(2) + "\n", a.out_path, out);
        return kExitOk;
    }
    std::ostringstream s;
    s << "alpha " << fmt(a.alpha) << ", weight " << a.weight.label() << "\n"
      << "  p_phi                 " << fmt(r.p_phi) << (r.dirichlet_restricted_endpoint ? "  (restricted endpoint holds)" : "") << "\n"
      << "  Neumann/Regularity R  ";
    if (r.range.empty)
        s << "empty\n";
    else
        s << "(" << fmt(r.range.p_minus) << ", " << fmt(r.range.p_plus) << ")\n";
    s << "  H1 atomic             " << (r.h1 ? "yes" : "no") << "\n"
      << "  S_p^R at p_-, p_+     " << (r.spr_minus ? "yes" : "no") << ", " << (r.spr_plus ? "yes" : "no") << "\n"
      << "  well-defined at p_-   " << (r.well_defined_minus ? "yes" : "no") << "\n";
    for (const auto& n : r.notes) s << "  note: " << n << "\n";
    emit(s.str(), a.out_path, out);
    return kExitOk;
}

// solve --------------------------------------------------------------------------------------

struct SolveArgs {
    std::string problem;
    std::string mode = "lp";
    std::string datum;
    double p = 2.0;
    double alpha = 1.0;
    WeightArgs weight;
    bool json = false;
    std::string out_path;
    int grid_levels = 16;
    double tol = 1e-3;
};

std::string field_dump(const BVPSolution& s, int n) {
    std::string csv = "x,y,v,grad_norm\n";
    const GraphDomain& d = s.map.domain;
    for (int i = 0; i <= n; ++i) {
        const double x = -2.0 + 4.0 * i / n;
        for (int k = 1; k <= n; ++k) {
            const cplx z(x, d.gamma(x) + 2.0 * k / n);
            const Vec2 g = s.gradient(z);
            csv += csv_number(z.real()) + "," + csv_number(z.imag()) + "," + csv_number(s.value(z)) + "," +
                   csv_number(std::hypot(g[0], g[1])) + "\n";
        }
    }
    return csv;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    const auto map = cone_map(a.alpha);
    const Weight nu = a.weight.weight();
    const Space space = a.mode == "lp" ? Space::Lp : a.mode == "lorentz" ? Space::Lorentz : Space::H1;
    BVPSolution s;
    if (space == Space::H1) {
        if (a.problem != "neumann") throw UsageError("--mode h1 is available for the Neumann problem only");
        if (a.datum.rfind("atom:", 0) != 0) throw UsageError("--mode h1 needs an atom:center,radius datum");
        const auto args = split_numbers(a.datum.substr(5));
        if (args.size() != 2) throw UsageError("atom datum needs center,radius");
        AtomicDatum datum;
        datum.atoms.push_back(make_atom(args[0], args[1], nu, map.domain));
        datum.coefficients.push_back(1.0);
        s = solve_neumann_atomic(map, nu, datum);
    } else {
        const CurveFunction g{datum_from_spec(a.datum, nu)};
        if (a.problem == "dirichlet")
            s = solve_dirichlet(map, nu, g, a.p, space);
        else if (a.problem == "neumann")
            s = solve_neumann(map, nu, g, a.p, space);
        else
            s = solve_regularity(map, nu, g, a.p, space);
    }
    const auto& d = s.diagnostics;
    bool ok = d.boundary_error <= a.tol;
    if (s.problem == Problem::Regularity) ok = ok && d.bridge_error <= a.tol;
    if (!a.out_path.empty()) emit(field_dump(s, a.grid_levels), a.out_path, out);
    if (a.json) {
        Json j = to_json(s);
        j["alpha"] = a.alpha;
        j["weight"] = a.weight.label();
        j["tolerance"] = a.tol;
        j["checks_passed"] = ok;
        out << j.dump(2) << "\n";
    } else {
        out << "problem " << to_string(s.problem) << ", mode " << to_string(s.space) << ", p " << fmt(s.p)
            << ", datum " << s.datum_label << "\n"
            << "  verdict            " << d.verdict << "\n"
            << "  ||N(.)||           " << fmt(d.nt_max_norm) << "\n"
            << "  ||datum||          " << fmt(d.datum_norm) << "\n"
            << "  ratio              " << (d.status == "ok" ? fmt(d.ratio) : d.status) << "\n"
            << "  boundary error     " << fmt(d.boundary_error) << "\n";
        if (s.problem == Problem::Regularity)
            out << "  bridge error       " << fmt(d.bridge_error) << "\n"
                << "  transfer identity  " << fmt(d.transfer_identity_error) << "\n";
        out << (ok ? "checks pass" : "checks FAILED") << "\n";
    }
    return ok ? kExitOk : kExitCheckFailed;
}

// check --------------------------------------------------------------------------------------

struct CheckArgs {
    WeightArgs weight;
    std::string pair;
    std::string u_spec, v_spec;
    double alpha = 1.0;
    std::string cls;
    double p = 2.0;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
    Json j;
    j["class"] = a.cls;
    j["p"] = a.p;
    bool member = false;
    if (a.cls == "spr") {
        Weight u = Weight::one(), v = Weight::one();
        if (!a.pair.empty()) {
            if (a.pair != "phiprime,pushforward") throw UsageError("--pair supports phiprime,pushforward");
            const auto map = cone_map(a.alpha);
            u = derivative_modulus(map);
            v = pushforward(a.weight.weight(), map);
            j["alpha"] = a.alpha;
            j["weight"] = a.weight.label();
        } else if (!a.u_spec.empty() && !a.v_spec.empty()) {
            u = weight_from_spec(a.u_spec);
            v = weight_from_spec(a.v_spec);
        } else {
            throw UsageError("--class spr needs --pair or both --u and --v");
        }
        j["u"] = u.describe();
        j["v"] = v.describe();
        const auto verdict = spr_sufficient(u, v, a.p);
        j["verdict"] = to_json(verdict);
        member = verdict.holds;
    } else {
        if (!a.pair.empty()) throw UsageError("--pair is used with --class spr");
        const Weight w = a.weight.weight();
        j["weight"] = to_json(w);
        std::optional<bool> closed;
        try {
            if (a.cls == "ap") closed = ap_member_closed_form(w, a.p);
            else if (a.cls == "apr") closed = ap_member_closed_form(w, a.p, Restricted::Yes);
            else if (a.cls == "a1") closed = ap_member_closed_form(w, 1.0);
            else closed = ainf_member_closed_form(w);
        } catch (const UnsupportedError&) {
        }
        j["closed_form"] = closed ? Json(*closed) : Json(nullptr);
        if (a.cls == "ap") {
            const auto e = ap_constant_estimate(w, a.p);
            j["numeric"] = to_json(e);
            member = closed.value_or(!e.divergent);
        } else if (a.cls == "apr" || a.cls == "a1") {
            const double q = a.cls == "a1" ? 1.0 : a.p;
            const auto e = apr_constant_estimate(w, q);
            j["numeric"] = to_json(e);
            member = closed.value_or(!e.divergent);
        } else {
            if (!closed) throw UsageError("A_infinity test needs a symbolic weight");
            member = *closed;
        }
    }
    j["member"] = member;
    out << j.dump(2) << "\n";
    return member ? kExitOk : kExitCheckFailed;
}

// sparse-test --------------------------------------------------------------------------------

struct SparseArgs {
    std::string pair = "phiprime,pushforward";
    std::string u_spec, v_spec;
    double alpha = 1.5;
    WeightArgs weight;
    double p = 3.0;
    int levels = 1;
    int trials = 16;
    std::uint64_t seed = 1;
    std::string out_path;
};

int cmd_sparse_test(const SparseArgs& a, std::ostream& out) {
    Weight u = Weight::one(), v = Weight::one();
    if (!a.u_spec.empty() || !a.v_spec.empty()) {
        if (a.u_spec.empty() || a.v_spec.empty()) throw UsageError("--u and --v go together");
        u = weight_from_spec(a.u_spec);
        v = weight_from_spec(a.v_spec);
    } else {
        if (a.pair != "phiprime,pushforward") throw UsageError("--pair supports phiprime,pushforward");
        const auto map = cone_map(a.alpha);
        u = derivative_modulus(map);
        v = pushforward(a.weight.weight(), map);
    }
    if (a.levels < 1) throw UsageError("--levels must be positive");
    std::string csv;
    for (int level = 0; level < a.levels; ++level) {
        SawyerSpec spec;
        spec.level = level;
        spec.random_unions = a.trials;
        spec.seed = a.seed;
        std::string part = sawyer_csv(sawyer_ratio_test(u, v, a.p, spec));
        if (level > 0) part.erase(0, part.find('\n') + 1);
        csv += part;
    }
    emit(csv, a.out_path, out);
    return kExitOk;
}

// acceptance ---------------------------------------------------------------------------------

struct AcceptanceArgs {
    bool json = false;
    std::uint64_t seed = AcceptanceConfig{}.seed;
    int inject = 0;
    std::vector<int> criteria;
    std::string out_path;
};

int cmd_acceptance(const AcceptanceArgs& a, std::ostream& out) {
    for (int id : a.criteria)
        if (id < 1 || id > kCriteria) throw UsageError("--criteria ids lie in 1..10");
    if (a.inject < 0 || a.inject > kCriteria) throw UsageError("--inject-error ids lie in 1..10");
    const auto rep = run_acceptance({a.seed, a.inject}, a.criteria);
    emit(a.json ? to_json(rep).dump(2) + "\n" : summary_text(rep), a.out_path, out);
    return rep.all_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted boundary value problems on graph Lipschitz domains"};
    app.require_subcommand(1);

    RangeArgs ra;
    auto* range = app.add_subcommand("range", "Solvability ranges for a cone and a weight");
    range->add_option("--alpha", ra.alpha, "Cone opening alpha in (0, 2)");
    add_weight_options(range, ra.weight);
    range->add_flag("--json", ra.json, "JSON output");
    range->add_flag("--sweep", ra.sweep, "CSV over the alpha x beta grid");
    range->add_option("--alphas", ra.alphas, "Sweep alphas (comma separated)");
    range->add_option("--betas", ra.betas, "Sweep betas (comma separated)");
    range->add_option("--out", ra.out_path, "Output file");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Solve a boundary value problem on a cone");
    solve->add_option("--problem", sa.problem)->required()->check(CLI::IsMember({"dirichlet", "neumann", "regularity"}));
    solve->add_option("--mode", sa.mode)->check(CLI::IsMember({"lp", "lorentz", "h1"}));
    solve->add_option("--datum", sa.datum, "Datum spec, e.g. indicator:-1,1")->required();
    solve->add_option("--p", sa.p)->check(CLI::Range(1.0, 1e6));
    solve->add_option("--alpha", sa.alpha);
    add_weight_options(solve, sa.weight);
    solve->add_flag("--json", sa.json);
    solve->add_option("--out", sa.out_path, "Field dump CSV (x,y,v,grad_norm)");
    solve->add_option("--grid-levels", sa.grid_levels, "Field dump resolution")->check(CLI::Range(1, 4096));
    solve->add_option("--tol", sa.tol, "Boundary-recovery and bridge tolerance")->check(CLI::PositiveNumber);

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "Weight class verdicts");
    add_weight_options(check, ca.weight);
    check->add_option("--pair", ca.pair, "phiprime,pushforward");
    check->add_option("--u", ca.u_spec);
    check->add_option("--v", ca.v_spec);
    check->add_option("--alpha", ca.alpha);
    check->add_option("--class", ca.cls)->required()->check(CLI::IsMember({"ap", "apr", "a1", "ainf", "spr"}));
    check->add_option("--p", ca.p)->check(CLI::Range(1.0, 1e6));

    SparseArgs pa;
    auto* sparse = app.add_subcommand("sparse-test", "Sawyer-type ratios over sparse families");
    sparse->add_option("--pair", pa.pair);
    sparse->add_option("--u", pa.u_spec);
    sparse->add_option("--v", pa.v_spec);
    sparse->add_option("--alpha", pa.alpha);
    add_weight_options(sparse, pa.weight);
    sparse->add_option("--p", pa.p)->check(CLI::Range(1.0, 1e6));
    sparse->add_option("--levels", pa.levels, "Number of refinement levels");
    sparse->add_option("--trials", pa.trials, "Random unions per level")->check(CLI::Range(0, 100000));
    sparse->add_option("--seed", pa.seed);
    sparse->add_option("--out", pa.out_path);

    AcceptanceArgs aa;
    auto* acc = app.add_subcommand("acceptance", "Run the acceptance suite");
    acc->add_flag("--json", aa.json);
    acc->add_option("--seed", aa.seed);
    acc->add_option("--inject-error", aa.inject, "Tamper the tolerances of this criterion");
    acc->add_option("--criteria", aa.criteria, "Subset of criteria")->delimiter(',');
    acc->add_option("--out", aa.out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (range->parsed()) return cmd_range(ra, out);
        if (solve->parsed()) return cmd_solve(sa, out);
        if (check->parsed()) return cmd_check(ca, out);
        if (sparse->parsed()) return cmd_sparse_test(pa, out);
        return cmd_acceptance(aa, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace lipbvp
