#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dissoc/prob.hpp"

namespace dissoc {

// P[AB] for two events of equal marginal q at correlation rho:
//   P[AB] = rho * (q - q^2) + q^2,   in [max(0, 2q-1), q].
Prob pab_from_rho(const Prob& rho, const Prob& q);

// Smallest feasible correlation between two events of equal marginal q:
//   rho_min(q) = max(-q/(1-q), -(1-q)/q).
// Disjointness caps the left operand (P[AB] >= 0) and P[A|B] <= 1 caps the
// right one; the function is symmetric under q <-> 1-q.
Prob rho_min(const Prob& q);

struct ClosedFormPair {
  Prob exact;        // probability of the original expression
  Prob dissociated;  // probability of the two-copy dissociation
};

// x&A | x&B with P[x] = p, P[A] = P[B] = q, P[AB] = pab, both copies at p_i:
//   exact       = 2pq - p*pab
//   dissociated = 2*p_i*q - p_i^2*pab
ClosedFormPair closed_form_disjunctive(const Prob& p, const Prob& p_i,
                                       const Prob& q, const Prob& pab);

// (x|A) & (x|B), same parameters:
//   exact       = p + (1-p)*pab
//   dissociated = p_i^2 + 2*p_i*(1-p_i)*q + (1-p_i)^2*pab
// The dissociated form conditions on the pair of copies: both true (p_i^2)
// makes the expression certain, exactly one (2*p_i*(1-p_i)) leaves a single
// event, neither ((1-p_i)^2) leaves the joint event. Only this coefficient
// on pab is tight at rho = 1 with p_i = sqrt(p); the tests pin it against
// exhaustive enumeration.
ClosedFormPair closed_form_conjunctive(const Prob& p, const Prob& p_i,
                                       const Prob& q, const Prob& pab);

struct SweepRow {
  double p, q, rho, pab;
  double exact_disj, upper_disj, lower_disj;
  double exact_conj, upper_conj, lower_conj;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Largest |closed form - enumeration| over all rows and all six columns.
  double max_discrepancy = 0.0;
};

// For each (p, q), sweep rho over `rho_steps` evenly spaced points in
// [rho_min(q), 1]. Every row is computed twice -- closed forms and
// exhaustive enumeration of the realized pair -- and the run aborts with
// InvariantViolation if the two routes disagree beyond 1e-9 or a bound
// lands on the wrong side. Bounds use the symmetric assignments for two
// copies. Rows come out in deterministic (p, q, rho) order.
SweepResult sweep_fig2(const std::vector<Prob>& p_values,
                       const std::vector<Prob>& q_values,
                       std::size_t rho_steps);

// CSV with header
//   p,q,rho,pab,exact_disj,upper_disj,lower_disj,exact_conj,upper_conj,lower_conj
// UTF-8, LF line ends, 12 significant digits.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace dissoc
