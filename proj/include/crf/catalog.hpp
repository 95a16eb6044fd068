#ifndef CRF_CATALOG_HPP
#define CRF_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crf/hermitian.hpp"
#include "crf/linalg.hpp"

namespace crf {

/// Built-in catalog of the 4-dimensional solvable Lie algebras carrying a
/// left-invariant complex structure, with their soliton data. Entries are
/// data-driven: structure constants, J columns, metrics and expected values
/// are arithmetic expressions over the entry's parameters.

struct ParamSpec {
    std::string name;
    std::optional<double> lo, hi;
    bool lo_open = false, hi_open = false;
    std::vector<double> exclude;

    bool admits(double v) const;
    std::string describe() const;
};

struct BracketTerm {
    int i, j, k;  // 1-based
    std::string coeff;
};

struct JColumn {
    int x;  // 1-based source basis vector
    std::vector<std::pair<int, std::string>> terms;  // (k, coeff)
};

struct KahlerExpectation {
    enum class Kind { yes, no, iff_zero } kind = Kind::no;
    std::string expr;  // for iff_zero: Kahler exactly when this vanishes
};

struct ExpectedData {
    std::vector<std::string> P_diag;
    std::optional<std::string> c;                  // absent: not a soliton (P != 0)
    std::optional<std::vector<std::string>> D_diag;
    KahlerExpectation kahler;
};

struct CatalogEntry {
    std::string algebra;
    int variant = 1;
    std::string J_name;
    int dim = 4;
    std::vector<ParamSpec> params;
    std::vector<std::pair<std::string, std::string>> derived;  // name -> expr
    std::vector<BracketTerm> bracket;
    std::vector<JColumn> Jmap;
    bool metric_any = false;
    std::vector<std::string> metric_diag;  // when !metric_any
    ExpectedData expected;
    std::vector<std::map<std::string, double>> samples;
    std::string special;  // hooks for row-specific verification
    std::string note;
    std::string quotients;  // compact quotient surfaces carried by the group, if any

    std::string key() const;
};

struct Catalog {
    int schema = 1;
    std::vector<CatalogEntry> entries;

    static const Catalog& builtin();
    static Catalog from_json_text(const std::string& text);
    std::string to_json_text(int indent = 2) const;

    const CatalogEntry* find(const std::string& algebra, int variant,
                             const std::string& J_name) const;
    /// All entries of a given algebra name.
    std::vector<const CatalogEntry*> find_all(const std::string& algebra) const;
};

/// Raw JSON of the built-in catalog (single source of truth, shipped as
/// data/catalog.json).
const char* builtin_catalog_json();

/// Fully evaluated entry at concrete parameters.
struct CatalogInstance {
    HermitianStructure structure;
    Mat expected_P;
    std::optional<double> expected_c;
    std::optional<Mat> expected_D;
    bool expected_kahler = false;
    bool metric_any = false;
};

/// Throws std::invalid_argument when a parameter is missing or out of range
/// (the message cites the constraint), validation_error if the assembled
/// structure fails its invariants.
CatalogInstance instantiate(const CatalogEntry& entry,
                            const std::map<std::string, double>& params);

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0;
    std::string detail;
};

struct RowReport {
    std::string key;
    std::map<std::string, double> params;
    std::vector<CheckResult> checks;
    bool pass = true;
};

struct CatalogReport {
    std::vector<RowReport> rows;
    int failures = 0;
    bool pass() const { return failures == 0; }
};

/// Recomputes the Chern-Ricci operator, certificate and Kahler flag and
/// compares with the entry's expected data; "any"-metric rows additionally
/// sweep random compatible metrics and require a vanishing operator.
RowReport verify_entry(const CatalogEntry& entry, const std::map<std::string, double>& params);

/// Runs verify_entry over every entry with up to `samples_per_family`
/// parameter samples (entries without parameters run once). With
/// parallel=true rows fan out across OpenMP threads; reports are merged in
/// a fixed order so both paths produce identical output.
CatalogReport verify_all(const Catalog& cat, int samples_per_family = 5, bool parallel = true);

/// The expanded (entry, parameter sample) work list used by verify_all.
std::vector<std::pair<const CatalogEntry*, std::map<std::string, double>>> expand_samples(
    const Catalog& cat, int samples_per_family);

}  // namespace crf

#endif
