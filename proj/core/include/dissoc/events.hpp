#pragma once

#include <array>
#include <string>
#include <vector>

#include "dissoc/expr.hpp"
#include "dissoc/prob.hpp"

namespace dissoc {

// A multi-valued independent variable: value v_i is taken with probability
// p_i, with the p_i exact rationals summing to one.
struct DisjointDeclaration {
  std::vector<std::string> values;  // labels; generated as v1..vk if empty
  std::vector<Rational> probs;
};

// k disjoint events with prescribed probabilities, built from k-1
// independent Booleans "_y1".."_y{k-1}" as the chain
//   A_1 = _y1,  A_2 = !_y1&_y2,  ...,  A_k = !_y1&...&!_y{k-1}.
// Each P[_yi] is the declared mass divided by the mass remaining after the
// earlier values (zero when nothing remains).
struct DisjointEncoding {
  std::vector<std::string> y_names;
  std::vector<Rational> y_probs;
  std::vector<Expr> events;  // A_1..A_k

  ProbAssignment assignment() const;
};

DisjointEncoding encode_disjoint(const DisjointDeclaration& decl);

// A pair of events with equal marginal q and prescribed correlation rho,
// realized over five independent Booleans "_y1".."_y5" as
//   A = _y1&_y2 | _y3 | _y4      B = !_y1&_y2 | _y3 | _y5.
// Boundary correlations come out as exact probability vectors:
//   rho = 1            -> (0, 0, q, 0, 0)         (identical events)
//   rho = 0            -> (0, 0, 0, q, q)         (independent events)
//   rho = rho_min(q),
//     q <= 1/2         -> (1/2, 2q, 0, 0, 0)      (disjoint events)
//     q >  1/2         -> (1/2, 1, 0, 2q-1, 2q-1) (A or B certain)
// Intermediate rho is solved by bisecting a blend parameter between the
// nearest boundary vectors inside the family (1/2, u, s, t, t); the
// achieved marginal and correlation of every solution are measured by
// exhaustive enumeration over the 2^5 assignments, never by trusting a
// closed form.
struct CorrelatedPairSpec {
  Prob q;    // target marginal
  Prob rho;  // target correlation
  std::array<Prob, 5> y_probs;
  Expr a;
  Expr b;
  Prob achieved_q;
  Prob achieved_rho;
  Prob achieved_pab;

  ProbAssignment probs() const;
};

CorrelatedPairSpec correlated_pair(const Prob& q, const Prob& rho);

// rho(A, B) = (P[AB] - P[A]P[B]) / sqrt(var(A) var(B)). Stays exact when
// the inputs are exact and the variance product is a perfect square (always
// the case for equal marginals). Throws TrivialEvent when either marginal
// is 0 or 1.
Prob correlation_of(const Expr& a, const Expr& b, const ProbAssignment& probs);

}  // namespace dissoc
