#ifndef CRF_IO_HPP
#define CRF_IO_HPP

#include <string>

#include <json.hpp>

#include "crf/chern.hpp"
#include "crf/flow.hpp"
#include "crf/hermitian.hpp"
#include "crf/soliton.hpp"

namespace crf {

/// Input document, schema 1:
///   { "schema": 1, "dim": 4,
///     "bracket": [ {"i":1,"j":2,"k":3,"c":1.0}, ... ],   // 1-based, i<j enough
///     "J": [[...],[...],...] or flat row-major array,
///     "metric": "identity" | dense symmetric array }
/// Parsing performs the antisymmetric completion and full validation; any
/// violated invariant surfaces as validation_error with its residual.
HermitianStructure parse_input_document(const nlohmann::json& doc);
HermitianStructure parse_input_file(const std::string& path);

/// Structural parse without invariant checks (shapes, index ranges and
/// duplicates still throw). Lets `validate` report every violation at once.
struct RawInput {
    LieBracket bracket;
    Mat J;
    Mat g;
};
RawInput parse_input_raw(const nlohmann::json& doc);

/// All violated invariants with their residuals, in a fixed order:
/// bracket identities, J^2, metric shape/positivity, J-compatibility,
/// integrability. Empty means the document is a valid structure.
std::vector<ValidationIssue> diagnose(const RawInput& raw);

nlohmann::json mat_to_json(const Mat& m);
Mat mat_from_json(const nlohmann::json& j, int dim, const char* what);

nlohmann::json vec_to_json(const Vec& v);

/// Extended reals serialize as numbers, infinities as "inf" / "-inf".
nlohmann::json time_to_json(double t);

nlohmann::json chern_to_json(const ChernRicciData& d);
nlohmann::json certificate_to_json(const SolitonCertificate& c);
nlohmann::json limit_to_json(const FlowSolution& f, const LimitResult& lim);

/// 17 significant digits, '.' decimal, no locale.
std::string format_double(double v);

}  // namespace crf

#endif
