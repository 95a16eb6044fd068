#include "crf/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "crf/almost_abelian.hpp"
#include "crf/chern.hpp"
#include "crf/expr.hpp"
#include "crf/flow.hpp"
#include "crf/soliton.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crf {

using nlohmann::json;

bool ParamSpec::admits(double v) const {
    if (lo) {
        if (lo_open ? !(v > *lo) : !(v >= *lo)) return false;
    }
    if (hi) {
        if (hi_open ? !(v < *hi) : !(v <= *hi)) return false;
    }
    for (double ex : exclude)
        if (std::fabs(v - ex) < 1e-12) return false;
    return true;
}

std::string ParamSpec::describe() const {
    std::ostringstream os;
    os << name << " in " << (lo ? (lo_open ? "(" : "[") + std::to_string(*lo) : "(-inf")
       << ", " << (hi ? std::to_string(*hi) + (hi_open ? ")" : "]") : "inf)");
    for (double ex : exclude) os << ", " << name << " != " << ex;
    return os.str();
}

std::string CatalogEntry::key() const {
    return algebra + "#" + std::to_string(variant) + "/" + J_name;
}

namespace {

ParamSpec parse_param(const json& p) {
    ParamSpec s;
    s.name = p.at("name").get<std::string>();
    if (p.contains("lo")) s.lo = p["lo"].get<double>();
    if (p.contains("hi")) s.hi = p["hi"].get<double>();
    s.lo_open = p.value("lo_open", false);
    s.hi_open = p.value("hi_open", false);
    if (p.contains("exclude"))
        for (const auto& e : p["exclude"]) s.exclude.push_back(e.get<double>());
    return s;
}

CatalogEntry parse_entry(const json& e) {
    CatalogEntry out;
    out.algebra = e.at("algebra").get<std::string>();
    out.variant = e.value("variant", 1);
    out.J_name = e.at("J").get<std::string>();
    out.dim = e.value("dim", 4);
    if (e.contains("params"))
        for (const auto& p : e["params"]) out.params.push_back(parse_param(p));
    if (e.contains("derived"))
        for (auto it = e["derived"].begin(); it != e["derived"].end(); ++it)
            out.derived.emplace_back(it.key(), it.value().get<std::string>());
    for (const auto& b : e.at("bracket"))
        out.bracket.push_back({b.at("i").get<int>(), b.at("j").get<int>(), b.at("k").get<int>(),
                               b.at("c").get<std::string>()});
    for (const auto& col : e.at("Jmap")) {
        JColumn jc;
        jc.x = col.at("x").get<int>();
        for (const auto& t : col.at("to"))
            jc.terms.emplace_back(t.at(0).get<int>(), t.at(1).get<std::string>());
        out.Jmap.push_back(jc);
    }
    const json& m = e.at("metric");
    if (m.is_string() && m.get<std::string>() == "any") {
        out.metric_any = true;
    } else {
        for (const auto& d : m) out.metric_diag.push_back(d.get<std::string>());
    }
    const json& ex = e.at("expected");
    for (const auto& d : ex.at("P")) out.expected.P_diag.push_back(d.get<std::string>());
    if (ex.contains("c")) out.expected.c = ex["c"].get<std::string>();
    if (ex.contains("D")) {
        std::vector<std::string> dd;
        for (const auto& d : ex["D"]) dd.push_back(d.get<std::string>());
        out.expected.D_diag = dd;
    }
    const json& k = ex.at("kahler");
    if (k.is_string()) {
        out.expected.kahler.kind = k.get<std::string>() == "yes" ? KahlerExpectation::Kind::yes
                                                                 : KahlerExpectation::Kind::no;
    } else {
        out.expected.kahler.kind = KahlerExpectation::Kind::iff_zero;
        out.expected.kahler.expr = k.at("iff_zero").get<std::string>();
    }
    if (e.contains("samples"))
        for (const auto& s : e["samples"]) {
            std::map<std::string, double> m2;
            for (auto it = s.begin(); it != s.end(); ++it) m2[it.key()] = it.value().get<double>();
            out.samples.push_back(m2);
        }
    out.special = e.value("special", "");
    out.note = e.value("note", "");
    out.quotients = e.value("quotients", "");
    return out;
}

}  // namespace

Catalog Catalog::from_json_text(const std::string& text) {
    json doc = json::parse(text);
    Catalog cat;
    cat.schema = doc.value("schema", 1);
    if (cat.schema != 1) throw std::invalid_argument("unsupported catalog schema");
    for (const auto& e : doc.at("entries")) cat.entries.push_back(parse_entry(e));
    return cat;
}

const Catalog& Catalog::builtin() {
    static const Catalog cat = Catalog::from_json_text(builtin_catalog_json());
    return cat;
}

std::string Catalog::to_json_text(int indent) const {
    json doc;
    doc["schema"] = schema;
    doc["entries"] = json::array();
    for (const CatalogEntry& e : entries) {
        json je;
        je["algebra"] = e.algebra;
        je["variant"] = e.variant;
        je["J"] = e.J_name;
        je["dim"] = e.dim;
        je["params"] = json::array();
        for (const ParamSpec& p : e.params) {
            json jp;
            jp["name"] = p.name;
            if (p.lo) jp["lo"] = *p.lo;
            if (p.hi) jp["hi"] = *p.hi;
            if (p.lo_open) jp["lo_open"] = true;
            if (p.hi_open) jp["hi_open"] = true;
            if (!p.exclude.empty()) jp["exclude"] = p.exclude;
            je["params"].push_back(jp);
        }
        if (!e.derived.empty()) {
            json jd;
            for (const auto& [k, v] : e.derived) jd[k] = v;
            je["derived"] = jd;
        }
        je["bracket"] = json::array();
        for (const BracketTerm& b : e.bracket)
            je["bracket"].push_back({{"i", b.i}, {"j", b.j}, {"k", b.k}, {"c", b.coeff}});
        je["Jmap"] = json::array();
        for (const JColumn& col : e.Jmap) {
            json jc;
            jc["x"] = col.x;
            jc["to"] = json::array();
            for (const auto& [k, c] : col.terms) jc["to"].push_back({k, c});
            je["Jmap"].push_back(jc);
        }
        if (e.metric_any) je["metric"] = "any";
        else je["metric"] = e.metric_diag;
        json ex;
        ex["P"] = e.expected.P_diag;
        if (e.expected.c) ex["c"] = *e.expected.c;
        if (e.expected.D_diag) ex["D"] = *e.expected.D_diag;
        switch (e.expected.kahler.kind) {
            case KahlerExpectation::Kind::yes: ex["kahler"] = "yes"; break;
            case KahlerExpectation::Kind::no: ex["kahler"] = "no"; break;
            case KahlerExpectation::Kind::iff_zero:
                ex["kahler"] = {{"iff_zero", e.expected.kahler.expr}};
                break;
        }
        je["expected"] = ex;
        if (!e.samples.empty()) {
            je["samples"] = json::array();
            for (const auto& s : e.samples) {
                json js;
                for (const auto& [k, v] : s) js[k] = v;
                je["samples"].push_back(js);
            }
        }
        if (!e.special.empty()) je["special"] = e.special;
        if (!e.note.empty()) je["note"] = e.note;
        if (!e.quotients.empty()) je["quotients"] = e.quotients;
        doc["entries"].push_back(je);
    }
    return doc.dump(indent);
}

const CatalogEntry* Catalog::find(const std::string& algebra, int variant,
                                  const std::string& J_name) const {
    for (const CatalogEntry& e : entries)
        if (e.algebra == algebra && e.variant == variant && e.J_name == J_name) return &e;
    return nullptr;
}

std::vector<const CatalogEntry*> Catalog::find_all(const std::string& algebra) const {
    std::vector<const CatalogEntry*> v;
    for (const CatalogEntry& e : entries)
        if (e.algebra == algebra) v.push_back(&e);
    return v;
}

namespace {

std::map<std::string, double> full_vars(const CatalogEntry& entry,
                                        const std::map<std::string, double>& params) {
    for (const ParamSpec& p : entry.params) {
        auto it = params.find(p.name);
        if (it == params.end())
            throw std::invalid_argument("missing parameter: " + p.describe());
        if (!p.admits(it->second))
            throw std::invalid_argument("parameter out of range: " + p.name + "=" +
                                        std::to_string(it->second) + " violates " + p.describe());
    }
    std::map<std::string, double> vars = params;
    for (const auto& [name, expr] : entry.derived) vars[name] = eval_expr(expr, vars);
    return vars;
}

// deterministic uniform generator (seeded, platform-independent)
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform(double a, double b) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return a + (b - a) * u;
    }
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Mat random_compatible_metric(const Mat& J, Rng& rng) {
    int n = J.n;
    Mat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = rng.uniform(-1.0, 1.0);
    Mat g0 = transpose(M) * M + 0.5 * Mat::identity(n);
    return compatible_metric_from(J, g0);
}

}  // namespace

CatalogInstance instantiate(const CatalogEntry& entry,
                            const std::map<std::string, double>& params) {
    std::map<std::string, double> vars = full_vars(entry, params);
    int n = entry.dim;
    LieBracket b(n);
    for (const BracketTerm& t : entry.bracket) {
        double v = eval_expr(t.coeff, vars);
        b.at(t.i - 1, t.j - 1, t.k - 1) = v;
        b.at(t.j - 1, t.i - 1, t.k - 1) = -v;
    }
    Mat J(n, n);
    for (const JColumn& col : entry.Jmap)
        for (const auto& [k, expr] : col.terms) J(k - 1, col.x - 1) = eval_expr(expr, vars);
    Mat g;
    if (entry.metric_any) {
        g = canonical_compatible_metric(J);
    } else {
        Vec d;
        for (const std::string& e : entry.metric_diag) d.push_back(eval_expr(e, vars));
        g = Mat::diag(d);
    }
    CatalogInstance inst{HermitianStructure(b, J, g), Mat(n, n), std::nullopt, std::nullopt,
                         false, entry.metric_any};
    Vec pd;
    for (const std::string& e : entry.expected.P_diag) pd.push_back(eval_expr(e, vars));
    inst.expected_P = Mat::diag(pd);
    if (entry.expected.c) inst.expected_c = eval_expr(*entry.expected.c, vars);
    if (entry.expected.D_diag) {
        Vec dd;
        for (const std::string& e : *entry.expected.D_diag) dd.push_back(eval_expr(e, vars));
        inst.expected_D = Mat::diag(dd);
    }
    switch (entry.expected.kahler.kind) {
        case KahlerExpectation::Kind::yes: inst.expected_kahler = true; break;
        case KahlerExpectation::Kind::no: inst.expected_kahler = false; break;
        case KahlerExpectation::Kind::iff_zero:
            inst.expected_kahler = std::fabs(eval_expr(entry.expected.kahler.expr, vars)) <= 1e-12;
            break;
    }
    return inst;
}

namespace {

void check_r41_specifics(const CatalogEntry& entry, const CatalogInstance& inst,
                         RowReport& rep) {
    // no compatible metric is a soliton metric
    Rng rng(fnv1a(entry.key() + "/soliton-sweep"));
    bool any_soliton = false;
    for (int k = 0; k < 40; ++k) {
        Mat g = random_compatible_metric(inst.structure.J, rng);
        HermitianStructure h(inst.structure.bracket, inst.structure.J, g);
        SolitonCertificate cert = certify(h);
        if (cert.is_soliton) any_soliton = true;
    }
    rep.checks.push_back({"no_soliton_metric", !any_soliton, 0.0,
                          "certification refused over 40 random compatible metrics"});

    // the normal-form family member carrying this algebra is never a soliton
    bool pred = is_r41_type(1, 0, 1, 1, 0) &&
                !predict_behavior(make_spec4(1, 0, 1, 1, 0)).soliton;
    rep.checks.push_back({"normal_form_predicate", pred, 0.0,
                          "nilpotent-shear family member with p != 0 is not a soliton"});

    // the scaled forward limit leaves the isomorphism class: it becomes the
    // diagonal algebra with ad eigenvalues (1,1,1)
    FlowSolution f = make_flow(inst.structure);
    LimitResult nu = limit_nu(f, Direction::plus_time);
    bool ok = nu.converged && !nu.degenerate;
    double res = 0;
    if (ok) {
        LieBracket lim_orig = act_gl(nu.bracket, f.basis);
        LieBracket r411(4);
        r411.set(3, 0, 0, 1.0);
        r411.set(3, 1, 1, 1.0);
        r411.set(3, 2, 2, 1.0);
        ok = equal_up_to_positive_scale(lim_orig, r411, 1e-8);
        HermitianStructure hl = limit_structure(f, nu);
        SolitonCertificate cl = certify(hl);
        ok = ok && cl.is_soliton;
        res = bracket_distance(scale(lim_orig, 1.0 / bracket_norm(lim_orig)),
                               scale(r411, 1.0 / bracket_norm(r411)));
    }
    rep.checks.push_back({"rescaled_limit_is_diagonal_algebra", ok, res,
                          "forward nu-limit is the (1,1,1) diagonal algebra, a soliton"});

    for (const CheckResult& c : rep.checks)
        if (!c.pass) rep.pass = false;
}

}  // namespace

RowReport verify_entry(const CatalogEntry& entry, const std::map<std::string, double>& params) {
    RowReport rep;
    rep.key = entry.key();
    rep.params = params;
    CatalogInstance inst = instantiate(entry, params);  // throws to the caller on failure
    rep.checks.push_back({"instantiate", true, 0.0, ""});

    ChernRicciData crd = chern_ricci_operator(inst.structure);
    double pres = max_abs(crd.P - inst.expected_P);
    rep.checks.push_back({"operator", pres <= 1e-8, pres, "Chern-Ricci operator matches"});

    SolitonCertificate cert = certify(inst.structure);
    if (inst.expected_c && inst.expected_D) {
        double cres = std::fabs(cert.c - *inst.expected_c);
        double dres = max_abs(cert.D - *inst.expected_D);
        bool ok = cert.is_soliton && cres <= 1e-8 && dres <= 1e-8;
        rep.checks.push_back({"soliton", ok, std::max(cres, dres),
                              ok ? "certificate matches (c, D)" : cert.witness});
    } else {
        rep.checks.push_back({"soliton", !cert.is_soliton, 0.0,
                              cert.is_soliton ? "unexpected positive certificate"
                                              : "non-soliton as expected: " + cert.witness});
    }

    bool kact = is_kahler(inst.structure);
    rep.checks.push_back({"kahler", kact == inst.expected_kahler,
                          0.0, kact ? "closed fundamental form" : "non-closed fundamental form"});

    if (inst.metric_any) {
        Rng rng(fnv1a(rep.key + "/any-metric"));
        double worst = 0;
        for (int k = 0; k < 5; ++k) {
            Mat g = random_compatible_metric(inst.structure.J, rng);
            HermitianStructure h(inst.structure.bracket, inst.structure.J, g);
            ChernRicciData c2 = chern_ricci_operator(h);
            worst = std::max(worst, max_abs(c2.P));
        }
        rep.checks.push_back({"flat_for_any_metric", worst <= 1e-8, worst,
                              "operator vanishes for 5 random compatible metrics"});
    }

    for (const CheckResult& c : rep.checks)
        if (!c.pass) rep.pass = false;

    if (entry.special == "r41") check_r41_specifics(entry, inst, rep);
    return rep;
}

std::vector<std::pair<const CatalogEntry*, std::map<std::string, double>>> expand_samples(
    const Catalog& cat, int samples_per_family) {
    std::vector<std::pair<const CatalogEntry*, std::map<std::string, double>>> items;
    for (const CatalogEntry& e : cat.entries) {
        if (e.params.empty()) {
            items.emplace_back(&e, std::map<std::string, double>{});
            continue;
        }
        int want = std::max(1, samples_per_family);
        int have = static_cast<int>(e.samples.size());
        for (int i = 0; i < std::min(want, have); ++i) items.emplace_back(&e, e.samples[i]);
        // extend deterministically when more samples are requested than listed
        const double phi = 0.6180339887498949;
        for (int m = have; m < want; ++m) {
            std::map<std::string, double> s;
            for (size_t pi = 0; pi < e.params.size(); ++pi) {
                const ParamSpec& p = e.params[pi];
                double lo = p.lo ? *p.lo : -3.0;
                double hi = p.hi ? *p.hi : 3.0;
                double margin = 0.05 * (hi - lo);
                double a = p.lo && p.lo_open ? lo + margin : lo;
                double b = p.hi && p.hi_open ? hi - margin : hi;
                double frac = std::fmod(phi * (m + 1) + 0.37 * static_cast<double>(pi + 1), 1.0);
                double v = a + frac * (b - a);
                int guard = 0;
                while (!p.admits(v) && guard++ < 64) {
                    frac = std::fmod(frac + phi, 1.0);
                    v = a + frac * (b - a);
                }
                s[p.name] = v;
            }
            items.emplace_back(&e, s);
        }
    }
    return items;
}

CatalogReport verify_all(const Catalog& cat, int samples_per_family, bool parallel) {
    auto items = expand_samples(cat, samples_per_family);
    std::vector<RowReport> rows(items.size());
    auto run_one = [&](int i) {
        try {
            rows[i] = verify_entry(*items[i].first, items[i].second);
        } catch (const std::exception& ex) {
            RowReport r;
            r.key = items[i].first->key();
            r.params = items[i].second;
            r.checks.push_back({"instantiate", false, 0.0, ex.what()});
            r.pass = false;
            rows[i] = r;
        }
    };
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < static_cast<int>(items.size()); ++i) run_one(i);
    } else {
        for (int i = 0; i < static_cast<int>(items.size()); ++i) run_one(i);
    }
#else
    (void)parallel;
    for (int i = 0; i < static_cast<int>(items.size()); ++i) run_one(i);
#endif
    CatalogReport rep;
    rep.rows = std::move(rows);
    for (const RowReport& r : rep.rows)
        if (!r.pass) ++rep.failures;
    return rep;
}

}  // namespace crf
