// Command-line front end: validation, Chern-Ricci data, flow evaluation,
// rescaled limits, soliton certification and catalog verification for
// left-invariant hermitian structures given as JSON documents.
//
// Exit codes: 0 ok, 2 parse error, 3 invariant violation, 4 domain error
// (time outside the maximal interval), 5 verification failures present.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crf/catalog.hpp"
#include "crf/chern.hpp"
#include "crf/expr.hpp"
#include "crf/flow.hpp"
#include "crf/io.hpp"
#include "crf/soliton.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitDomain = 4;
constexpr int kExitVerify = 5;

std::vector<double> parse_time_list(const std::string& ts, const std::string& grid) {
    std::vector<double> times;
    if (!ts.empty()) {
        std::stringstream ss(ts);
        std::string tok;
        while (std::getline(ss, tok, ',')) times.push_back(std::stod(tok));
    }
    if (!grid.empty()) {
        double start, stop;
        int steps;
        if (std::sscanf(grid.c_str(), "%lf:%lf:%d", &start, &stop, &steps) != 3 || steps < 1)
            throw std::invalid_argument("grid must be start:stop:steps");
        for (int i = 0; i <= steps; ++i)
            times.push_back(start + (stop - start) * i / static_cast<double>(steps));
    }
    if (times.empty()) throw std::invalid_argument("no evaluation times given (use --t or --grid)");
    return times;
}

void emit_csv(const std::string& path, const crf::FlowSolution& f,
              const std::vector<double>& times) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open CSV output: " + path);
    int n = f.initial.dim();
    out << "t";
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out << ",g" << i + 1 << j + 1;
    for (int i = 0; i < n; ++i) out << ",P" << i + 1;
    out << ",trP,mu_norm\n";
    for (double t : times) {
        crf::HermitianStructure ht = crf::metric_at(f, t);
        out << crf::format_double(t);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) out << "," << crf::format_double(ht.g(i, j));
        for (int i = 0; i < n; ++i) {
            double p = f.crd.eigenvalues[i];
            out << "," << crf::format_double(p / (1.0 - 2.0 * t * p));
        }
        out << "," << crf::format_double(crf::scalar_curvature_at(f, t));
        out << "," << crf::format_double(crf::bracket_norm(crf::bracket_flow_at(f, t)));
        out << "\n";
    }
}

int cmd_validate(const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "cannot open " << file << "\n";
        return kExitParse;
    }
    json doc = json::parse(in);  // throws parse_error -> handled in main
    crf::RawInput raw = crf::parse_input_raw(doc);
    std::vector<crf::ValidationIssue> issues = crf::diagnose(raw);
    if (!issues.empty()) {
        for (const crf::ValidationIssue& v : issues)
            std::cout << "violated: " << v.identity << " (residual "
                      << crf::format_double(v.magnitude) << ")\n";
        return kExitInvariant;
    }
    std::cout << "ok\n";
    return kExitOk;
}

int cmd_chern(const std::string& file) {
    crf::HermitianStructure h = crf::parse_input_file(file);
    crf::ChernRicciData d = crf::chern_ricci_operator(h);
    std::cout << crf::chern_to_json(d).dump(2) << "\n";
    return kExitOk;
}

int cmd_flow(const std::string& file, const std::string& ts, const std::string& grid,
             const std::string& csv_path) {
    crf::HermitianStructure h = crf::parse_input_file(file);
    crf::FlowSolution f = crf::make_flow(h);
    std::vector<double> times = parse_time_list(ts, grid);
    json rows = json::array();
    for (double t : times) {
        crf::HermitianStructure ht = crf::metric_at(f, t);
        json row;
        row["t"] = t;
        row["g"] = crf::mat_to_json(ht.g);
        row["P"] = crf::mat_to_json(crf::operator_at(f, t));
        row["trP"] = crf::scalar_curvature_at(f, t);
        row["mu_norm"] = crf::bracket_norm(crf::bracket_flow_at(f, t));
        rows.push_back(row);
    }
    if (!csv_path.empty()) emit_csv(csv_path, f, times);
    json out;
    out["T_minus"] = crf::time_to_json(f.T_minus);
    out["T_plus"] = crf::time_to_json(f.T_plus);
    out["rows"] = rows;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_limit(const std::string& file, const std::string& kind, const std::string& direction) {
    crf::HermitianStructure h = crf::parse_input_file(file);
    crf::FlowSolution f = crf::make_flow(h);
    crf::Direction dir =
        direction == "minus" ? crf::Direction::minus_time : crf::Direction::plus_time;
    crf::LimitResult lim =
        kind == "nu" ? crf::limit_nu(f, dir) : crf::limit_lambda(f, dir);
    std::cout << crf::limit_to_json(f, lim).dump(2) << "\n";
    return kExitOk;
}

int cmd_soliton(const std::string& file) {
    crf::HermitianStructure h = crf::parse_input_file(file);
    crf::SolitonCertificate cert = crf::certify(h);
    std::cout << crf::certificate_to_json(cert).dump(2) << "\n";
    return kExitOk;
}

crf::Catalog load_catalog(const std::string& path) {
    if (path.empty()) return crf::Catalog::builtin();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open catalog file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return crf::Catalog::from_json_text(ss.str());
}

int cmd_catalog_list(const crf::Catalog& cat, bool as_json) {
    if (as_json) {
        json out = json::array();
        for (const auto& e : cat.entries) {
            json je;
            je["algebra"] = e.algebra;
            je["variant"] = e.variant;
            je["J"] = e.J_name;
            json ps = json::array();
            for (const auto& p : e.params) ps.push_back(p.describe());
            je["params"] = ps;
            out.push_back(je);
        }
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& e : cat.entries) {
        std::cout << e.algebra << "  variant " << e.variant << "  " << e.J_name;
        if (!e.params.empty()) {
            std::cout << "  [";
            for (size_t i = 0; i < e.params.size(); ++i)
                std::cout << (i ? "; " : "") << e.params[i].describe();
            std::cout << "]";
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_catalog_show(const crf::Catalog& cat, const std::string& name, bool as_json) {
    auto matches = cat.find_all(name);
    if (matches.empty()) {
        std::cerr << "unknown catalog algebra: " << name << "\n";
        return kExitParse;
    }
    crf::Catalog sub;
    for (const auto* e : matches) sub.entries.push_back(*e);
    if (as_json) {
        std::cout << sub.to_json_text(2) << "\n";
        return kExitOk;
    }
    for (const auto* e : matches) {
        std::cout << e->key() << "\n";
        std::cout << "  bracket:";
        for (const auto& b : e->bracket)
            std::cout << " [e" << b.i << ",e" << b.j << "]+=(" << b.coeff << ")e" << b.k;
        std::cout << "\n  J:";
        for (const auto& col : e->Jmap) {
            std::cout << " e" << col.x << "->";
            for (size_t i = 0; i < col.terms.size(); ++i)
                std::cout << (i ? "+" : "") << "(" << col.terms[i].second << ")e"
                          << col.terms[i].first;
        }
        std::cout << "\n  metric: ";
        if (e->metric_any) std::cout << "any compatible";
        else {
            for (size_t i = 0; i < e->metric_diag.size(); ++i)
                std::cout << (i ? ", " : "diag(") << e->metric_diag[i];
            std::cout << ")";
        }
        std::cout << "\n  expected P: diag(";
        for (size_t i = 0; i < e->expected.P_diag.size(); ++i)
            std::cout << (i ? ", " : "") << e->expected.P_diag[i];
        std::cout << ")\n";
        if (e->expected.c) std::cout << "  soliton: c = " << *e->expected.c << "\n";
        else std::cout << "  soliton: none\n";
        if (!e->note.empty()) std::cout << "  note: " << e->note << "\n";
        if (!e->quotients.empty()) std::cout << "  quotients: " << e->quotients << "\n";
    }
    return kExitOk;
}

int cmd_catalog_verify(const crf::Catalog& cat, int samples, bool serial, bool as_json) {
    crf::CatalogReport rep = crf::verify_all(cat, samples, !serial);
    if (as_json) {
        json rows = json::array();
        for (const auto& r : rep.rows) {
            json jr;
            jr["key"] = r.key;
            json jp;
            for (const auto& [k, v] : r.params) jp[k] = v;
            jr["params"] = jp;
            jr["pass"] = r.pass;
            json checks = json::array();
            for (const auto& c : r.checks)
                checks.push_back({{"name", c.name},
                                  {"pass", c.pass},
                                  {"residual", c.residual},
                                  {"detail", c.detail}});
            jr["checks"] = checks;
            rows.push_back(jr);
        }
        json out;
        out["rows"] = rows;
        out["failures"] = rep.failures;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : rep.rows) {
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.key;
            if (!r.params.empty()) {
                std::cout << " {";
                bool first = true;
                for (const auto& [k, v] : r.params) {
                    std::cout << (first ? "" : ", ") << k << "=" << v;
                    first = false;
                }
                std::cout << "}";
            }
            std::cout << "\n";
            if (!r.pass)
                for (const auto& c : r.checks)
                    if (!c.pass)
                        std::cout << "    failed " << c.name << " (residual " << c.residual
                                  << ") " << c.detail << "\n";
        }
        std::cout << rep.rows.size() - rep.failures << "/" << rep.rows.size() << " rows pass\n";
    }
    return rep.pass() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chern-Ricci flow on Lie groups: forms, flows, limits, solitons"};
    app.require_subcommand(1);

    std::string file, ts, grid, csv_path, kind = "lambda", direction = "plus";
    std::string cat_name, cat_file, dump_path;
    int samples = 5;
    bool serial = false, as_json = false;

    CLI::App* validate = app.add_subcommand("validate", "check a structure document");
    validate->add_option("file", file)->required();

    CLI::App* chern = app.add_subcommand("chern", "Chern-Ricci form, operator and spectrum");
    chern->add_option("file", file)->required();

    CLI::App* flow = app.add_subcommand("flow", "evaluate the flow at given times");
    flow->add_option("file", file)->required();
    flow->add_option("--t", ts, "comma-separated times");
    flow->add_option("--grid", grid, "start:stop:steps");
    flow->add_option("--emit-csv", csv_path, "write a CSV trajectory");

    CLI::App* limit = app.add_subcommand("limit", "rescaled bracket-flow limit");
    limit->add_option("file", file)->required();
    limit->add_option("--kind", kind)->check(CLI::IsMember({"lambda", "nu"}));
    limit->add_option("--direction", direction)->check(CLI::IsMember({"plus", "minus"}));

    CLI::App* soliton = app.add_subcommand("soliton", "soliton certificate");
    soliton->add_option("file", file)->required();

    CLI::App* catalog = app.add_subcommand("catalog", "built-in catalog operations");
    catalog->require_subcommand(1);
    catalog->add_option("--file", cat_file, "load a catalog JSON instead of the built-in one");
    CLI::App* cat_list = catalog->add_subcommand("list", "list entries");
    cat_list->add_flag("--json", as_json);
    CLI::App* cat_show = catalog->add_subcommand("show", "show entries of one algebra");
    cat_show->add_option("name", cat_name)->required();
    cat_show->add_flag("--json", as_json);
    CLI::App* cat_verify = catalog->add_subcommand("verify", "recompute and compare every entry");
    cat_verify->add_option("--samples", samples, "parameter samples per family");
    cat_verify->add_flag("--serial", serial, "disable the parallel row fan-out");
    cat_verify->add_flag("--json", as_json);
    CLI::App* cat_dump = catalog->add_subcommand("dump", "print the catalog JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*validate) return cmd_validate(file);
        if (*chern) return cmd_chern(file);
        if (*flow) return cmd_flow(file, ts, grid, csv_path);
        if (*limit) return cmd_limit(file, kind, direction);
        if (*soliton) return cmd_soliton(file);
        if (*catalog) {
            crf::Catalog cat = load_catalog(cat_file);
            if (*cat_list) return cmd_catalog_list(cat, as_json);
            if (*cat_show) return cmd_catalog_show(cat, cat_name, as_json);
            if (*cat_verify) return cmd_catalog_verify(cat, samples, serial, as_json);
            if (*cat_dump) {
                std::cout << cat.to_json_text(2) << "\n";
                return kExitOk;
            }
        }
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "document error: " << e.what() << "\n";
        return kExitParse;
    } catch (const crf::validation_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
