#pragma once

#include "dissoc/expr.hpp"
#include "dissoc/prob.hpp"

namespace dissoc {

// Hard limit for the enumeration evaluator (~1M assignments).
inline constexpr int kEnumerationCap = 20;
// Limit for the Shannon-expansion evaluator.
inline constexpr int kShannonCap = 64;

// Exact P[e] by summing the weight of every satisfying total assignment.
// This is the slow, obviously-correct evaluator; it doubles as the oracle
// against which everything faster is checked. Result is an exact rational
// when the assignment is exact. Throws MissingProbability for uncovered
// variables and TooManyVariables beyond the cap.
Prob eval_enumerate(const Expr& e, const ProbAssignment& probs,
                    int cap = kEnumerationCap);

// Same value as eval_enumerate (exactly equal on exact inputs), computed by
// recursive conditioning P[e] = p * P[e|x=1] + (1-p) * P[e|x=0] with
// memoization keyed by the conditioned sub-expression. Conditioning folds
// constants on the fly; the input tree is never rewritten.
Prob eval_shannon(const Expr& e, const ProbAssignment& probs,
                  int cap = kShannonCap);

// Residual checks of the inclusion-exclusion and event-splitting identities:
//   eq1 = P[A|B] - (P[A] + P[B] - P[AB])
//   eq2 = P[AB]  - (P[A] + P[B] - P[A|B])
//   eq3 = P[A|B] - (P[A!B] + P[B])
//   eq4 = P[AB]  - (P[A|!B] + P[B] - 1)
// All four are identically zero; the report carries the computed residuals
// so a failure is visible rather than silently absorbed.
struct IdentityReport {
  Prob p_a, p_b, p_and, p_or, p_a_not_b, p_a_or_not_b;
  Prob eq1, eq2, eq3, eq4;

  // Exact zero for exact inputs, |r| <= tol for binary64 inputs.
  bool all_zero(double tol = 1e-12) const;
};

IdentityReport verify_identities(const Expr& a, const Expr& b,
                                 const ProbAssignment& probs);

}  // namespace dissoc
