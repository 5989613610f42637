#pragma once

#include <string>
#include <string_view>

#include "dissoc/errors.hpp"
#include "dissoc/expr.hpp"
#include "dissoc/prob.hpp"

namespace dissoc {

// Expression grammar (whitespace between tokens is ignored):
//
//   expr    := or
//   or      := and ('|' and)*          flattened into one n-ary node
//   and     := unary ('&' unary)*      flattened into one n-ary node
//   unary   := '!' unary | primary
//   primary := '(' expr ')' | ident | '0' | '1'
//   ident   := [A-Za-z_][A-Za-z0-9_']*
//
// Precedence: '!' > '&' > '|'. Conjunction always needs an explicit '&':
// "x1x3" is one identifier, never a product. Parenthesized subexpressions
// keep their own node, so "(a|b)|c" and "a|b|c" parse to different trees.
// Input is UTF-8; LF and CRLF are both accepted.
Expr parse_expr(std::string_view text);

// Inverse of parse_expr with minimal parentheses: the output re-parses to a
// structurally equal tree. Generated variable names escape '#' as '\'' so
// the printed text stays inside the grammar's lexical class.
std::string format_expr(const Expr& e);

// Probability file: one "name = value" per line, '#' starts a comment,
// blank lines are skipped. A value is a decimal ("0.25"), a rational
// ("1/4") or an integer ("1"); any decimal anywhere demotes the whole
// assignment to approximate. Values must lie in [0, 1] and names must be
// unique.
ProbAssignment parse_probs(std::string_view text);

// Parse one probability value ("1/4", "0.25", "1") as in parse_probs.
// Exposed for command lines that accept inline values.
Prob parse_prob_value(std::string_view text);

}  // namespace dissoc
