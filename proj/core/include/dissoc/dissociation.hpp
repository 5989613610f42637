#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dissoc/expr.hpp"

namespace dissoc {

// Occurrences of a variable are its positive leaves numbered 1..n in
// left-to-right order; this ordering is part of the public contract so
// group partitions are reproducible. A variable with any leaf below a
// negation node cannot be dissociated.
//
// Each group of the partition is replaced by one fresh variable named
// "<var>#<k>" (k = 1-based group index). '#' is outside the grammar's
// lexical class, so generated names can never collide with parsed input;
// hand-built trees that do contain such names are rejected instead of
// silently aliased.

std::string dissociated_name(const std::string& var, std::size_t group);

// Number of positive occurrences of var in e; throws NegatedOccurrence if
// any occurrence sits below a negation.
std::size_t count_occurrences(const Expr& e, const std::string& var);

struct DissociationResult {
  Expr original;
  Expr dissociated;
  // fresh name -> original name; applying it to `dissociated` recovers
  // `original` exactly.
  std::map<std::string, std::string> theta;
  // 1-based occurrence indices, one group per fresh variable.
  std::vector<std::vector<std::size_t>> groups;
};

// Replace each group's occurrences of var by one fresh variable.
DissociationResult dissociate(const Expr& e, const std::string& var,
                              const std::vector<std::vector<std::size_t>>& groups);

// Finest grouping: one fresh variable per occurrence.
DissociationResult dissociate(const Expr& e, const std::string& var);

// True iff substituting theta back into the dissociated expression yields
// an expression structurally equal to the original.
bool check_dissociation(const DissociationResult& result);

// One-level normal forms around a single variable x:
//   disjunctive:  A0 | x&A_1 | ... | x&A_n
//   conjunctive:  A0 & (x|A_1) & ... & (x|A_n)
// x never occurs inside A0 or any A_i. A clause that is x alone contributes
// A_i = 1 (disjunctive) or A_i = 0 (conjunctive).
enum class TemplateKind { disjunctive, conjunctive };

struct Template {
  TemplateKind kind;
  std::string var;
  std::optional<Expr> a0;
  std::vector<Expr> events;  // A_1..A_n in child order

  std::size_t n() const { return events.size(); }
};

// Match e against the one-level form for var. No factoring is attempted:
// the input must already be a top-level disjunction of conjunctions (or
// dually) with var a direct conjunct/disjunct of its clauses. Errors:
// VariableAbsent, MixedPolarity (var below a negation), NotTemplateForm.
Template extract_template(const Expr& e, const std::string& var);

// Rebuild an expression from a template. The result evaluates identically
// to the expression the template was extracted from (it may differ in
// inconsequential structure, e.g. folded A0).
Expr template_to_expr(const Template& t);

}  // namespace dissoc
