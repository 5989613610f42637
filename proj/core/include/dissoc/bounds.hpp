#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dissoc/dissociation.hpp"
#include "dissoc/expr.hpp"
#include "dissoc/prob.hpp"

namespace dissoc {

enum class BoundDirection { upper, lower };

// Probabilities for the fresh copies of a dissociated variable. The four
// symmetric assignments, with p the original probability and n copies:
//
//                 disjunctive            conjunctive
//   upper bound   p_i = p                p_i = p^(1/n)
//   lower bound   p_i = 1 - (1-p)^(1/n)  p_i = p
//
// The root-based cells require binary64 arithmetic for n >= 2 and are
// tagged approximate; the copy cells stay exact for exact p.
struct BoundPlan {
  TemplateKind kind;
  BoundDirection direction;
  Prob p;                        // probability of the original variable
  std::vector<Prob> assignments; // p_1..p_n, positional in template order
};

std::vector<Prob> assign_symmetric(TemplateKind kind, BoundDirection direction,
                                   const Prob& p, std::size_t n);

// Side conditions under which the dissociated probability is guaranteed to
// bound the original:
//   disjunctive/upper: p_i >= p for all i
//   disjunctive/lower: p_i <= p for all i and (1-p_1)...(1-p_n) >= 1-p
//   conjunctive/upper: p_i >= p for all i and p_1...p_n >= p
//   conjunctive/lower: p_i <= p for all i
// `tight_family` marks the boundary members: all p_i = p (copy cells),
// product equality (root cells). Exact inputs compare exactly; any
// approximate value switches the checks to a 1e-9 tolerance.
enum class PlanStatus { valid, tight_family, invalid };

struct PlanValidation {
  PlanStatus status;
  std::string reason;  // set when status == invalid
};

PlanValidation validate_assignment(TemplateKind kind, BoundDirection direction,
                                   const Prob& p,
                                   const std::vector<Prob>& p_list);

struct BoundReport {
  Prob exact;   // P of the original expression
  Prob bound;   // P of the dissociated expression
  BoundDirection direction;
  Prob gap;     // bound - exact, signed
  bool tight;   // |gap| within tolerance (exact zero on the exact path)
};

struct ComputedBound {
  BoundReport report;
  DissociationResult dissociation;
  BoundPlan plan;
  ProbAssignment bound_probs;  // assignment used to evaluate the bound
};

// Dissociate var (finest grouping, aligned with template order), assign the
// plan's probabilities to the fresh copies and evaluate both expressions.
// A report whose gap lands on the wrong side throws InvariantViolation:
// that cannot happen for a valid plan.
ComputedBound compute_bound(const Expr& e, const std::string& var,
                            BoundDirection direction,
                            const ProbAssignment& probs);  // symmetric plan
ComputedBound compute_bound(const Expr& e, const std::string& var,
                            BoundDirection direction,
                            const ProbAssignment& probs, const BoundPlan& plan);

struct BoundStep {
  std::string var;
  ComputedBound computed;
};

struct BoundChain {
  BoundDirection direction;
  Prob exact;        // P of the original expression
  std::vector<BoundStep> steps;
  Expr final_expr;   // fully dissociated expression
  Prob final_bound;  // P of final_expr; equals `exact` for an empty chain
};

// Apply compute_bound per variable left-to-right on the progressively
// dissociated expression, with symmetric plans. Each step bounds the
// previous step's expression, so the final value bounds the original by
// transitivity. Step failures are rethrown with the step index.
BoundChain dissociate_bound_multi(const Expr& e,
                                  const std::vector<std::string>& vars,
                                  BoundDirection direction,
                                  const ProbAssignment& probs);

struct RefuteWitness {
  std::string family;        // which anchor family produced the witness
  std::vector<Expr> events;  // the instantiated A_1..A_n
  ProbAssignment probs;      // probabilities of the variable and the events
  Prob exact;
  Prob tight_bound;      // bound under the symmetric tight assignment
  Prob candidate_bound;  // bound under the candidate assignment
};

// Empirical falsifier for "some other assignment gives uniformly tighter
// bounds": searches identical events, pairwise-disjoint events and (for
// n = 2) correlated pairs over a q-grid with rho in {rho_min, 0, 1} for an
// instantiation where the candidate is strictly worse than the symmetric
// tight assignment -- farther from the exact value or on the wrong side.
// Returns the first witness found, or nullopt. A candidate inside the
// tight family is never refutable and short-circuits to nullopt. This is a
// falsifier with a fixed search budget, not a proof of optimality.
std::optional<RefuteWitness> refute_better_assignment(
    TemplateKind kind, BoundDirection direction, const Prob& p, std::size_t n,
    const std::vector<Prob>& candidate);

}  // namespace dissoc
