#include "lipbvp/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "lipbvp/parallel.hpp"

namespace lipbvp {

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string RInterval::str() const {
    std::ostringstream os;
    os << '[' << a.numerator();
    if (a.denominator() != 1) os << '/' << a.denominator();
    os << ',' << b.numerator();
    if (b.denominator() != 1) os << '/' << b.denominator();
    os << ')';
    return os.str();
}

namespace {

bool inside(const RInterval& inner, const RInterval& outer) {
    return inner.a >= outer.a && inner.b <= outer.b;
}

bool overlapping(const RInterval& x, const RInterval& y) {
    return std::max(x.a, y.a) < std::min(x.b, y.b);
}

std::pair<RInterval, RInterval> children(const RInterval& q) {
    const Rational m = (q.a + q.b) / Rational(2);
    return {{q.a, m}, {m, q.b}};
}

void tree(const RInterval& q, int depth, std::vector<RInterval>& out) {
    out.push_back(q);
    if (depth == 0) return;
    auto [l, r] = children(q);
    tree(l, depth - 1, out);
    tree(r, depth - 1, out);
}

void random_tree(const RInterval& q, int depth, std::mt19937_64& rng, std::vector<RInterval>& out) {
    if (depth == 0) return;
    auto [l, r] = children(q);
    for (const RInterval& c : {l, r}) {
        if (rng() & 1u) out.push_back(c);
        random_tree(c, depth - 1, rng, out);
    }
}

double abs_integral(const SampledFunction& f, double a, double b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double lo = std::max(a, f.edges[i]);
        const double hi = std::min(b, f.edges[i + 1]);
        if (hi > lo) acc += std::abs(f.values[i]) * (hi - lo);
    }
    return acc;
}

}  // namespace

std::vector<RInterval> spec_intervals(const SparseSpec& spec) {
    using Rule = SparseSpec::Rule;
    std::vector<RInterval> out;
    switch (spec.rule) {
        case Rule::Single:
            out.push_back(spec.root);
            break;
        case Rule::Chain: {
            RInterval q = spec.root;
            out.push_back(q);
            for (int k = 0; k < spec.depth; ++k) {
                auto [l, r] = children(q);
                q = spec.target <= l.b ? l : r;
                out.push_back(q);
            }
            break;
        }
        case Rule::FullTree:
            tree(spec.root, spec.depth, out);
            break;
        case Rule::Random: {
            std::mt19937_64 rng(spec.seed);
            out.push_back(spec.root);
            random_tree(spec.root, spec.depth, rng, out);
            break;
        }
        case Rule::Explicit:
            out = spec.intervals;
            break;
    }
    return out;
}

SparseBuild make_sparse_family(const SparseSpec& spec, Rational eta) {
    return make_sparse_family(spec_intervals(spec), eta);
}

SparseBuild make_sparse_family(const std::vector<RInterval>& intervals, Rational eta) {
    SparseBuild out;
    if (!(eta > Rational(0) && eta < Rational(1))) {
        out.reason = "eta must lie in (0,1)";
        return out;
    }
    const std::size_t n = intervals.size();
    for (const RInterval& q : intervals) {
        if (!(q.b > q.a)) {
            out.counterexample = q;
            out.reason = "empty interval";
            return out;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const RInterval &x = intervals[i], &y = intervals[j];
            if (overlapping(x, y) && !inside(x, y) && !inside(y, x)) {
                out.counterexample = x;
                out.reason = "intervals " + x.str() + " and " + y.str() + " are neither nested nor disjoint";
                return out;
            }
        }
    }
    SparseFamily fam;
    fam.eta = eta;
    fam.intervals = intervals;
    fam.E.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const RInterval& q = intervals[i];
        std::vector<RInterval> sub;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && inside(intervals[j], q) && !(intervals[j] == q)) sub.push_back(intervals[j]);
        std::vector<RInterval> maximal;
        for (const RInterval& s : sub) {
            bool covered = false;
            for (const RInterval& t : sub)
                if (!(t == s) && inside(s, t)) covered = true;
            if (!covered && std::find(maximal.begin(), maximal.end(), s) == maximal.end())
                maximal.push_back(s);
        }
        std::sort(maximal.begin(), maximal.end(),
                  [](const RInterval& x, const RInterval& y) { return x.a < y.a; });
        Rational cursor = q.a;
        Rational measure(0);
        for (const RInterval& c : maximal) {
            if (c.a > cursor) {
                fam.E[i].push_back({cursor, c.a});
                measure += c.a - cursor;
            }
            cursor = std::max(cursor, c.b);
        }
        if (q.b > cursor) {
            fam.E[i].push_back({cursor, q.b});
            measure += q.b - cursor;
        }
        if (measure < eta * q.length()) {
            out.counterexample = q;
            out.reason = "|E_Q| < eta |Q| for Q = " + q.str();
            return out;
        }
    }
    std::vector<std::pair<RInterval, std::size_t>> pieces;
    for (std::size_t i = 0; i < n; ++i)
        for (const RInterval& e : fam.E[i]) pieces.push_back({e, i});
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& x, const auto& y) { return x.first.a < y.first.a; });
    for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
        if (pieces[k].first.b > pieces[k + 1].first.a) {
            out.counterexample = intervals[pieces[k + 1].second];
            out.reason = "sets E_Q overlap at " + pieces[k + 1].first.str();
            return out;
        }
    }
    out.family = std::move(fam);
    return out;
}

double sparse_apply(const std::vector<RInterval>& family, const SampledFunction& f, double x) {
    double acc = 0.0;
    for (const RInterval& q : family) {
        if (!q.contains(x)) continue;
        const double a = to_double(q.a), b = to_double(q.b);
        acc += abs_integral(f, a, b) / (b - a);
    }
    return acc;
}

double sparse_apply(const SparseFamily& family, const SampledFunction& f, double x) {
    return sparse_apply(family.intervals, f, x);
}

namespace {

struct NamedFamily {
    std::string id;
    std::vector<Interval> intervals;
};

struct NamedSet {
    std::string spec;
    std::vector<Interval> pieces;
};

std::vector<Interval> as_double(const std::vector<RInterval>& v) {
    std::vector<Interval> out;
    for (const auto& q : v) out.push_back({to_double(q.a), to_double(q.b)});
    return out;
}

std::vector<NamedFamily> sawyer_families(int depth, int level_cap) {
    using Rule = SparseSpec::Rule;
    std::vector<NamedFamily> out;
    auto verified = [](const std::vector<RInterval>& v) {
        auto b = make_sparse_family(v, Rational(1, 2));
        if (!b.family) throw std::logic_error("trial family is not sparse: " + b.reason);
        return as_double(v);
    };
    SparseSpec left{Rule::Chain, depth, {Rational(-1), Rational(0)}, Rational(0), {}, 1};
    SparseSpec right{Rule::Chain, depth, {Rational(0), Rational(1)}, Rational(0), {}, 1};
    auto chain0 = spec_intervals(left);
    auto r = spec_intervals(right);
    chain0.insert(chain0.end(), r.begin(), r.end());
    out.push_back({"chain0", verified(chain0)});
    SparseSpec third{Rule::Chain, depth, {Rational(0), Rational(1)}, Rational(1, 3), {}, 1};
    out.push_back({"chain1/3", verified(spec_intervals(third))});
    const int L = std::min(depth, level_cap);
    std::vector<RInterval> lvl;
    const Rational step(1, std::int64_t(1) << L);
    for (std::int64_t k = 0; k < (std::int64_t(2) << L); ++k)
        lvl.push_back({Rational(-1) + step * Rational(k), Rational(-1) + step * Rational(k + 1)});
    out.push_back({"level" + std::to_string(L), verified(lvl)});
    return out;
}

std::vector<Interval> merge_pieces(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    std::vector<Interval> out;
    for (const Interval& i : v) {
        if (!out.empty() && i.a <= out.back().b)
            out.back().b = std::max(out.back().b, i.b);
        else
            out.push_back(i);
    }
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string set_name(const std::vector<Interval>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += " U ";
        s += "[" + fmt(v[i].a) + "," + fmt(v[i].b) + ")";
    }
    return s;
}

std::vector<NamedSet> sawyer_sets(int depth, const SawyerSpec& spec) {
    std::vector<NamedSet> out;
    for (int j = 0; j <= depth; ++j) {
        const double h = std::ldexp(1.0, -j);
        out.push_back({"", {{0.0, h}}});
        out.push_back({"", {{-h, 0.0}}});
    }
    for (int l = 0; l <= std::min(depth, spec.max_dyadic_level); ++l) {
        const double h = std::ldexp(1.0, -l);
        for (int k = 0; k < (2 << l); ++k) out.push_back({"", {{-1.0 + k * h, -1.0 + (k + 1) * h}}});
    }
    std::mt19937_64 rng(spec.seed);
    for (int t = 0; t < spec.random_unions; ++t) {
        const int count = 2 + static_cast<int>(rng() % 3);
        std::vector<Interval> pieces;
        for (int c = 0; c < count; ++c) {
            const int l = static_cast<int>(rng() % static_cast<unsigned>(depth + 1));
            const std::uint64_t k = rng() % (std::uint64_t(2) << l);
            const double h = std::ldexp(1.0, -l);
            pieces.push_back({-1.0 + static_cast<double>(k) * h, -1.0 + static_cast<double>(k + 1) * h});
        }
        out.push_back({"", merge_pieces(pieces)});
    }
    for (auto& s : out) s.spec = set_name(s.pieces);
    return out;
}

}  // namespace

SawyerReport sawyer_ratio_test(const Weight& u, const Weight& v, double p, const SawyerSpec& spec) {
    if (!(p >= 1.0)) throw DomainError("sawyer_ratio_test needs p >= 1");
    const int depth = spec.base_depth + spec.depth_step * spec.level;
    const auto families = sawyer_families(depth, spec.max_dyadic_level);
    const auto sets = sawyer_sets(depth, spec);

    std::vector<double> bp{-1.0, 0.0, 1.0};
    for (const auto& f : families)
        for (const auto& q : f.intervals) {
            bp.push_back(q.a);
            bp.push_back(q.b);
        }
    for (const auto& s : sets)
        for (const auto& q : s.pieces) {
            bp.push_back(q.a);
            bp.push_back(q.b);
        }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    const double floor = std::ldexp(1.0, -(depth + spec.floor_extra));
    std::vector<double> coarse;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double a = bp[i], b = bp[i + 1];
        if (a == 0.0 || b == 0.0) {
            const double far = a == 0.0 ? b : a;
            const double sgn = far > 0 ? 1.0 : -1.0;
            std::vector<double> g;
            for (double r = std::abs(far); r >= floor; r *= 0.5) g.push_back(sgn * r);
            if (sgn > 0) std::reverse(g.begin(), g.end());
            coarse.insert(coarse.end(), g.begin(), g.end());
        } else {
            coarse.push_back(a);
        }
    }
    coarse.push_back(bp.back());
    std::sort(coarse.begin(), coarse.end());
    coarse.erase(std::unique(coarse.begin(), coarse.end()), coarse.end());

    // Sample cells; cells straddling the origin gap below the floor are dropped.
    std::vector<Interval> cells;
    for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
        const double a = coarse[i], b = coarse[i + 1];
        if (a < 0.0 && b > 0.0) continue;
        for (int s = 0; s < spec.subcells; ++s)
            cells.push_back({a + (b - a) * s / spec.subcells, a + (b - a) * (s + 1) / spec.subcells});
    }
    const std::size_t nc = cells.size();
    std::vector<double> mid(nc), vmass(nc), uval(nc);
    for (std::size_t i = 0; i < nc; ++i) {
        mid[i] = 0.5 * (cells[i].a + cells[i].b);
        vmass[i] = integral(v, cells[i].a, cells[i].b);
        uval[i] = u(mid[i]);
    }
    struct Range {
        std::size_t lo, hi;
    };
    std::vector<std::vector<Range>> ranges(families.size());
    for (std::size_t f = 0; f < families.size(); ++f) {
        for (const auto& q : families[f].intervals) {
            auto lo = std::lower_bound(mid.begin(), mid.end(), q.a);
            auto hi = std::lower_bound(mid.begin(), mid.end(), q.b);
            ranges[f].push_back({static_cast<std::size_t>(lo - mid.begin()),
                                 static_cast<std::size_t>(hi - mid.begin())});
        }
    }

    const std::size_t nt = families.size() * sets.size();
    std::vector<SawyerTrial> trials(nt);
    std::vector<char> skipped(nt, 0);
    parallel_for(nt, [&](std::size_t t) {
        const std::size_t f = t / sets.size();
        const NamedSet& e = sets[t % sets.size()];
        SawyerTrial tr;
        tr.family_id = families[f].id;
        tr.e_spec = e.spec;
        tr.p = p;
        double ve = 0.0;
        for (const auto& q : e.pieces) ve += integral(v, q.a, q.b);
        if (!(ve > 0.0) || !std::isfinite(ve)) {
            skipped[t] = 1;
            trials[t] = tr;
            return;
        }
        std::vector<double> acc(nc, 0.0);
        for (std::size_t k = 0; k < families[f].intervals.size(); ++k) {
            const Interval& q = families[f].intervals[k];
            double ue = 0.0;
            for (const auto& piece : e.pieces) {
                const double lo = std::max(piece.a, q.a), hi = std::min(piece.b, q.b);
                if (hi > lo) ue += integral(u, lo, hi);
            }
            if (ue == 0.0) continue;
            const double avg = ue / q.length();
            for (std::size_t i = ranges[f][k].lo; i < ranges[f][k].hi; ++i) acc[i] += avg;
        }
        for (std::size_t i = 0; i < nc; ++i) acc[i] /= uval[i];
        tr.numerator = lorentz_norm(acc, vmass, p, LorentzQ::Infinity);
        tr.denominator = std::pow(ve, 1.0 / p);
        tr.ratio = tr.numerator / tr.denominator;
        tr.strong_ratio = lebesgue_norm(acc, vmass, p) / tr.denominator;
        trials[t] = tr;
    });
    SawyerReport rep;
    for (std::size_t t = 0; t < nt; ++t) {
        if (skipped[t]) {
            ++rep.skipped;
            continue;
        }
        rep.sup_ratio = std::max(rep.sup_ratio, trials[t].ratio);
        rep.strong_sup = std::max(rep.strong_sup, trials[t].strong_ratio);
        rep.trials.push_back(std::move(trials[t]));
    }
    return rep;
}

std::string sawyer_csv(const SawyerReport& report) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    };
    auto num = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    std::string out = "family_id,E_spec,p,numerator,denominator,ratio\n";
    for (const auto& t : report.trials) {
        out += quote(t.family_id) + "," + quote(t.e_spec) + "," + num(t.p) + "," + num(t.numerator) +
               "," + num(t.denominator) + "," + num(t.ratio) + "\n";
    }
    return out;
}

}  // namespace lipbvp
