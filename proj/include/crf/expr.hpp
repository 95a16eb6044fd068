#ifndef CRF_EXPR_HPP
#define CRF_EXPR_HPP

#include <map>
#include <string>

namespace crf {

/// Evaluate a small arithmetic expression over named variables.
/// Supports + - * / ^, parentheses, unary sign, and sqrt/abs/exp/log.
/// Used by the catalog, whose coefficients are parameter expressions.
double eval_expr(const std::string& text, const std::map<std::string, double>& vars);

}  // namespace crf

#endif
