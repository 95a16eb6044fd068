#include "crf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <tuple>

namespace crf {

using nlohmann::json;

Mat mat_from_json(const json& j, int dim, const char* what) {
    Mat m(dim, dim);
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    if (!j.empty() && j[0].is_array()) {
        if (static_cast<int>(j.size()) != dim)
            throw std::invalid_argument(std::string(what) + " must have dim rows");
        for (int i = 0; i < dim; ++i) {
            if (static_cast<int>(j[i].size()) != dim)
                throw std::invalid_argument(std::string(what) + " rows must have dim entries");
            for (int k = 0; k < dim; ++k) m(i, k) = j[i][k].get<double>();
        }
    } else {
        if (static_cast<int>(j.size()) != dim * dim)
            throw std::invalid_argument(std::string(what) + " flat array must have dim^2 entries");
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k) m(i, k) = j[i * dim + k].get<double>();
    }
    return m;
}

RawInput parse_input_raw(const json& doc) {
    if (doc.value("schema", 1) != 1) throw std::invalid_argument("unsupported schema");
    int dim = doc.at("dim").get<int>();
    if (dim <= 0 || dim % 2 != 0)
        throw validation_error("dim must be a positive even integer");
    LieBracket b(dim);
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& t : doc.at("bracket")) {
        int i = t.at("i").get<int>(), j = t.at("j").get<int>(), k = t.at("k").get<int>();
        double c = t.at("c").get<double>();
        if (i < 1 || i > dim || j < 1 || j > dim || k < 1 || k > dim)
            throw std::invalid_argument("bracket indices must lie in 1..dim");
        if (i == j) throw std::invalid_argument("bracket entries need i != j");
        int a = std::min(i, j), bb = std::max(i, j);
        if (!seen.insert({a, bb, k}).second)
            throw std::invalid_argument("duplicate bracket entry for (" + std::to_string(i) +
                                        "," + std::to_string(j) + "," + std::to_string(k) + ")");
        double v = i < j ? c : -c;
        b.at(a - 1, bb - 1, k - 1) = v;
        b.at(bb - 1, a - 1, k - 1) = -v;
    }
    Mat J = mat_from_json(doc.at("J"), dim, "J");
    Mat g;
    const auto& metric = doc.at("metric");
    if (metric.is_string()) {
        if (metric.get<std::string>() != "identity")
            throw std::invalid_argument("metric must be \"identity\" or a dense array");
        g = Mat::identity(dim);
    } else {
        g = mat_from_json(metric, dim, "metric");
    }
    return {std::move(b), std::move(J), std::move(g)};
}

std::vector<ValidationIssue> diagnose(const RawInput& raw) {
    std::vector<ValidationIssue> issues = validate_bracket(raw.bracket).issues;
    int n = raw.bracket.dim;
    double jr = max_abs(raw.J * raw.J + Mat::identity(n));
    if (jr > kTolAlg * std::max(1.0, max_abs(raw.J) * max_abs(raw.J)))
        issues.push_back({"J^2 = -I", jr});
    double sym = max_abs(raw.g - transpose(raw.g));
    if (sym > kTolAlg * std::max(1.0, max_abs(raw.g))) {
        issues.push_back({"metric symmetry", sym});
    } else {
        try {
            cholesky(raw.g);
        } catch (const validation_error&) {
            issues.push_back({"metric positive-definiteness", 0.0});
        }
    }
    double cr = max_abs(transpose(raw.J) * raw.g * raw.J - raw.g);
    if (cr > kTolAlg * std::max(1.0, max_abs(raw.g)) *
                 std::max(1.0, max_abs(raw.J) * max_abs(raw.J)))
        issues.push_back({"metric J-compatibility", cr});
    IntegrabilityCheck ic = check_integrability(raw.bracket, raw.J);
    if (!ic.ok) issues.push_back({"integrability of J", ic.residual});
    return issues;
}

HermitianStructure parse_input_document(const json& doc) {
    RawInput raw = parse_input_raw(doc);
    return HermitianStructure(raw.bracket, raw.J, raw.g);
}

HermitianStructure parse_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    json doc = json::parse(in);
    return parse_input_document(doc);
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.n; ++i) {
        json row = json::array();
        for (int j = 0; j < m.m; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json time_to_json(double t) {
    if (std::isinf(t)) return t > 0 ? json("inf") : json("-inf");
    return json(t);
}

json chern_to_json(const ChernRicciData& d) {
    json out;
    out["p"] = mat_to_json(d.p);
    out["P"] = mat_to_json(d.P);
    out["eigenvalues"] = vec_to_json(d.eigenvalues);
    json clusters = json::array();
    for (int c : d.cluster) clusters.push_back(c);
    out["clusters"] = clusters;
    out["T_minus"] = time_to_json(d.T_minus);
    out["T_plus"] = time_to_json(d.T_plus);
    return out;
}

json certificate_to_json(const SolitonCertificate& c) {
    json out;
    out["is_soliton"] = c.is_soliton;
    if (c.is_soliton) {
        out["c"] = c.c;
        out["D"] = mat_to_json(c.D);
    }
    json checks;
    checks["spectrum_two_clusters"] = c.checks.spectrum_two_clusters;
    checks["spectrum_residual"] = c.checks.spectrum_residual;
    checks["kernel_abelian_ideal"] = c.checks.kernel_abelian_ideal;
    checks["c_eigenspace_subalgebra"] = c.checks.c_eigenspace_subalgebra;
    checks["derivation_ok"] = c.checks.derivation_ok;
    checks["derivation_residual"] = c.checks.derivation_residual;
    checks["commutes_with_J"] = c.checks.commutes_with_J;
    checks["DJ_residual"] = c.checks.DJ_residual;
    out["checks"] = checks;
    if (!c.witness.empty()) out["witness"] = c.witness;
    return out;
}

json limit_to_json(const FlowSolution& f, const LimitResult& lim) {
    json out;
    out["kind"] = lim.kind == LimitResult::Kind::lambda_norm ? "lambda" : "nu";
    out["direction"] = lim.direction == Direction::plus_time ? "plus" : "minus";
    out["converged"] = lim.converged;
    out["degenerate"] = lim.degenerate;
    json terms = json::array();
    int n = lim.bracket.dim;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (lim.bracket.at(i, j, k) != 0.0)
                    terms.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1},
                                     {"c", lim.bracket.at(i, j, k)}});
    out["bracket"] = terms;
    out["predicted_P"] = mat_to_json(lim.predicted_P);
    out["eigenbasis"] = mat_to_json(f.basis);
    if (lim.converged && !lim.degenerate) {
        HermitianStructure hs = limit_structure(f, lim);
        ChernRicciData crd = chern_ricci_operator(hs);
        out["recomputed_P"] = mat_to_json(crd.P);
    }
    if (!lim.notes.empty()) out["notes"] = lim.notes;
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace crf
