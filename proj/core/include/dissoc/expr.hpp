#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace dissoc {

// Boolean expression AST over named variables.
//
// Node types:
//   - variable    : named Boolean random variable (leaf)
//   - constant    : 0 or 1 (leaf)
//   - negation    : exactly one child
//   - conjunction : ordered list of >= 2 children
//   - disjunction : ordered list of >= 2 children
//
// Expressions are immutable values backed by shared subtrees. Structural
// equality (same shape, same names, same child order) is the only equality;
// nothing is ever rewritten implicitly, so the tree the caller builds is the
// tree every operation sees. Each node carries a precomputed structural hash,
// which makes equality checks and memoization cheap.
//
// Variable names start with a letter or '_' and continue with letters,
// digits, '_' or '\''. The character '#' is additionally accepted so that
// machine-generated copies ("x#1") can never collide with parsed input.
class Expr {
 public:
  enum class Kind { variable, constant, negation, conjunction, disjunction };

  static Expr variable(std::string name);
  static Expr constant(bool value);
  static Expr negation(Expr child);
  static Expr conjunction(std::vector<Expr> children);  // >= 2 children
  static Expr disjunction(std::vector<Expr> children);  // >= 2 children

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }  // variable only
  bool value() const { return node_->value; }              // constant only
  const std::vector<Expr>& children() const { return node_->children; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    bool value = false;
    std::string name;
    std::vector<Expr> children;
    std::size_t hash = 0;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using ExprKind = Expr::Kind;

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

// Fold a list into one conjunction/disjunction; empty lists give the
// operator's neutral constant and singletons pass through unchanged.
Expr all_of(std::vector<Expr> parts);
Expr any_of(std::vector<Expr> parts);

// Names of all variables appearing in the tree.
std::set<std::string> free_vars(const Expr& e);

// Rename variables per theta; names not in theta pass through. The tree
// shape is unchanged and untouched subtrees are shared with the input.
Expr substitute(const Expr& e, const std::map<std::string, std::string>& theta);

// Negation pushed down to literals: the result is in negation normal form
// and satisfies P[complement(e)] = 1 - P[e] under every assignment.
Expr complement(const Expr& e);

// Truth value under a total assignment of the free variables; constants are
// allowed anywhere. Throws DomainError(missing_probability) for unassigned
// variables.
bool truth_eval(const Expr& e,
                const std::unordered_map<std::string, bool>& env);

}  // namespace dissoc
