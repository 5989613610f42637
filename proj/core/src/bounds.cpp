#include "dissoc/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "dissoc/errors.hpp"
#include "dissoc/eval.hpp"
#include "dissoc/events.hpp"
#include "dissoc/figures.hpp"

namespace dissoc {

namespace {

constexpr double kEqualityTol = 1e-9;    // equality / tightness, binary64 path
constexpr double kDirectionSlack = 1e-12;  // slack on bound-direction checks

bool all_exact(const Prob& p, const std::vector<Prob>& list) {
  if (!p.is_exact()) return false;
  for (const Prob& v : list) {
    if (!v.is_exact()) return false;
  }
  return true;
}

bool ge(const Prob& a, const Prob& b, bool exact_mode) {
  if (exact_mode) return a >= b;
  return a.to_double() >= b.to_double() - kEqualityTol;
}

bool le(const Prob& a, const Prob& b, bool exact_mode) {
  if (exact_mode) return a <= b;
  return a.to_double() <= b.to_double() + kEqualityTol;
}

bool eq(const Prob& a, const Prob& b, bool exact_mode) {
  if (exact_mode) return a == b;
  return std::fabs(a.to_double() - b.to_double()) <= kEqualityTol;
}

}  // namespace

std::vector<Prob> assign_symmetric(TemplateKind kind, BoundDirection direction,
                                   const Prob& p, std::size_t n) {
  if (n < 1) throw std::invalid_argument("assign_symmetric: n must be >= 1");
  if (p < Prob(0) || p > Prob(1)) {
    throw std::invalid_argument("assign_symmetric: p outside [0, 1]");
  }
  // All four cells coincide with p itself for a single copy.
  if (n == 1) return {p};
  const bool copies_of_p =
      (kind == TemplateKind::disjunctive && direction == BoundDirection::upper) ||
      (kind == TemplateKind::conjunctive && direction == BoundDirection::lower);
  if (copies_of_p) return std::vector<Prob>(n, p);
  const double pd = p.to_double();
  const double value = kind == TemplateKind::conjunctive
                           ? std::pow(pd, 1.0 / static_cast<double>(n))
                           : 1.0 - std::pow(1.0 - pd, 1.0 / static_cast<double>(n));
  return std::vector<Prob>(n, Prob::approx(value));
}

PlanValidation validate_assignment(TemplateKind kind, BoundDirection direction,
                                   const Prob& p,
                                   const std::vector<Prob>& p_list) {
  if (p_list.empty()) {
    return {PlanStatus::invalid, "assignment list is empty"};
  }
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    if (p_list[i] < Prob(0) || p_list[i] > Prob(1)) {
      return {PlanStatus::invalid,
              "p_" + std::to_string(i + 1) + " = " + p_list[i].str() +
                  " outside [0, 1]"};
    }
  }
  const bool exact_mode = all_exact(p, p_list);
  const bool upper = direction == BoundDirection::upper;
  const bool disj = kind == TemplateKind::disjunctive;

  // Per-copy comparison against p holds in every cell.
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    const bool ok = upper ? ge(p_list[i], p, exact_mode)
                          : le(p_list[i], p, exact_mode);
    if (!ok) {
      return {PlanStatus::invalid,
              "p_" + std::to_string(i + 1) + " = " + p_list[i].str() +
                  (upper ? " is below p = " : " is above p = ") + p.str()};
    }
  }

  if (disj && upper) {
    bool tight = true;
    for (const Prob& pi : p_list) tight = tight && eq(pi, p, exact_mode);
    return {tight ? PlanStatus::tight_family : PlanStatus::valid, ""};
  }
  if (disj && !upper) {
    Prob prod(1);
    for (const Prob& pi : p_list) prod = prod * (Prob(1) - pi);
    const Prob target = Prob(1) - p;
    if (!ge(prod, target, exact_mode)) {
      return {PlanStatus::invalid,
              "(1-p_1)...(1-p_n) = " + prod.str() + " is below 1-p = " +
                  target.str()};
    }
    return {eq(prod, target, exact_mode) ? PlanStatus::tight_family
                                         : PlanStatus::valid,
            ""};
  }
  if (!disj && upper) {
    Prob prod(1);
    for (const Prob& pi : p_list) prod = prod * pi;
    if (!ge(prod, p, exact_mode)) {
      return {PlanStatus::invalid,
              "p_1...p_n = " + prod.str() + " is below p = " + p.str()};
    }
    return {eq(prod, p, exact_mode) ? PlanStatus::tight_family
                                    : PlanStatus::valid,
            ""};
  }
  // conjunctive lower
  bool tight = true;
  for (const Prob& pi : p_list) tight = tight && eq(pi, p, exact_mode);
  return {tight ? PlanStatus::tight_family : PlanStatus::valid, ""};
}

namespace {

bool on_right_side(const Prob& gap, BoundDirection direction,
                   bool exact_mode) {
  if (direction == BoundDirection::upper) {
    return exact_mode ? gap >= Prob(0) : gap.to_double() >= -kDirectionSlack;
  }
  return exact_mode ? gap <= Prob(0) : gap.to_double() <= kDirectionSlack;
}

ComputedBound compute_bound_impl(const Expr& e, const std::string& var,
                                 BoundDirection direction,
                                 const ProbAssignment& probs,
                                 const Template& t, BoundPlan plan) {
  if (plan.direction != direction) {
    throw DomainError(ErrorCode::plan_mismatch,
                      "plan direction differs from the requested direction");
  }
  if (plan.kind != t.kind) {
    throw DomainError(ErrorCode::plan_mismatch,
                      "plan kind does not match the template kind");
  }
  if (plan.assignments.size() != t.n()) {
    throw DomainError(ErrorCode::plan_mismatch,
                      "plan has " + std::to_string(plan.assignments.size()) +
                          " probabilities for " + std::to_string(t.n()) +
                          " dissociated copies");
  }
  const Prob& p = probs.at(var);
  if (plan.p != p) {
    throw DomainError(ErrorCode::plan_mismatch,
                      "plan p = " + plan.p.str() +
                          " differs from the variable's probability " +
                          p.str());
  }
  PlanValidation validation =
      validate_assignment(plan.kind, direction, p, plan.assignments);
  if (validation.status == PlanStatus::invalid) {
    throw DomainError(ErrorCode::invalid_plan, validation.reason);
  }

  DissociationResult d = dissociate(e, var);
  ProbAssignment bound_probs = probs;
  for (std::size_t k = 0; k < plan.assignments.size(); ++k) {
    bound_probs.set(dissociated_name(var, k + 1), plan.assignments[k]);
  }

  const Prob exact = eval_shannon(e, probs);
  const Prob bound = eval_shannon(d.dissociated, bound_probs);
  const Prob gap = bound - exact;
  const bool exact_mode = exact.is_exact() && bound.is_exact();
  if (!on_right_side(gap, direction, exact_mode)) {
    throw InvariantViolation(
        std::string(direction == BoundDirection::upper ? "upper" : "lower") +
        " bound " + bound.str() + " lands on the wrong side of the exact "
        "value " + exact.str());
  }
  const bool tight = exact_mode ? gap == Prob(0)
                                : std::fabs(gap.to_double()) <= kEqualityTol;
  return ComputedBound{BoundReport{exact, bound, direction, gap, tight},
                       std::move(d), std::move(plan), std::move(bound_probs)};
}

}  // namespace

ComputedBound compute_bound(const Expr& e, const std::string& var,
                            BoundDirection direction,
                            const ProbAssignment& probs) {
  Template t = extract_template(e, var);
  const Prob& p = probs.at(var);
  BoundPlan plan{t.kind, direction, p,
                 assign_symmetric(t.kind, direction, p, t.n())};
  return compute_bound_impl(e, var, direction, probs, t, std::move(plan));
}

ComputedBound compute_bound(const Expr& e, const std::string& var,
                            BoundDirection direction,
                            const ProbAssignment& probs,
                            const BoundPlan& plan) {
  Template t = extract_template(e, var);
  return compute_bound_impl(e, var, direction, probs, t, plan);
}

BoundChain dissociate_bound_multi(const Expr& e,
                                  const std::vector<std::string>& vars,
                                  BoundDirection direction,
                                  const ProbAssignment& probs) {
  const Prob exact = eval_shannon(e, probs);
  std::vector<BoundStep> steps;
  Expr current = e;
  ProbAssignment current_probs = probs;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    try {
      ComputedBound cb =
          compute_bound(current, vars[i], direction, current_probs);
      current = cb.dissociation.dissociated;
      current_probs = cb.bound_probs;
      steps.push_back(BoundStep{vars[i], std::move(cb)});
    } catch (const DomainError& err) {
      throw DomainError(err.code(), "step " + std::to_string(i + 1) +
                                        " (variable '" + vars[i] +
                                        "'): " + err.what());
    }
  }
  const Prob final_bound =
      steps.empty() ? exact : steps.back().computed.report.bound;
  const Prob total_gap = final_bound - exact;
  const bool exact_mode = exact.is_exact() && final_bound.is_exact();
  if (!on_right_side(total_gap, direction, exact_mode)) {
    throw InvariantViolation("chained bound " + final_bound.str() +
                             " lands on the wrong side of the exact value " +
                             exact.str());
  }
  return BoundChain{direction, exact, std::move(steps), std::move(current),
                    final_bound};
}

namespace {

// The variable name used for the dissociated variable in refuter
// instantiations; the event constructions stay inside the "_y"/"_a"
// namespaces so independence holds by construction.
const std::string kRefuteVar = "_x";

Expr build_anchor_expr(TemplateKind kind, const std::vector<Expr>& events) {
  Template t{kind, kRefuteVar, std::nullopt, events};
  return template_to_expr(t);
}

Prob bound_under(const Expr& dissociated, const ProbAssignment& base,
                 const std::vector<Prob>& assignment) {
  ProbAssignment probs = base;
  for (std::size_t k = 0; k < assignment.size(); ++k) {
    probs.set(dissociated_name(kRefuteVar, k + 1), assignment[k]);
  }
  return eval_enumerate(dissociated, probs);
}

bool strictly_less(const Prob& a, const Prob& b) {
  if (a.is_exact() && b.is_exact()) return a < b;
  return a.to_double() < b.to_double() - kDirectionSlack;
}

// Candidate is worse than the tight assignment at this instantiation if it
// falls on the wrong side of the exact value or strictly farther from it.
bool candidate_worse(BoundDirection direction, const Prob& exact,
                     const Prob& tight_bound, const Prob& candidate_bound) {
  if (direction == BoundDirection::upper) {
    return strictly_less(candidate_bound, exact) ||
           strictly_less(tight_bound, candidate_bound);
  }
  return strictly_less(exact, candidate_bound) ||
         strictly_less(candidate_bound, tight_bound);
}

struct AnchorInstance {
  std::string family;
  std::vector<Expr> events;
  ProbAssignment event_probs;
};

std::vector<AnchorInstance> anchor_instances(std::size_t n) {
  std::vector<AnchorInstance> out;
  for (int tenths = 1; tenths <= 9; ++tenths) {
    const Rational q(tenths, 10);
    AnchorInstance ident;
    ident.family = "identical events, q = " + Prob::exact(q).str();
    ident.event_probs.set("_a", Prob::exact(q));
    for (std::size_t i = 0; i < n; ++i) {
      ident.events.push_back(Expr::variable("_a"));
    }
    out.push_back(std::move(ident));
  }
  for (int tenths = 1; tenths <= 9; ++tenths) {
    const Rational q(tenths, 10);
    if (Rational(static_cast<int>(n)) * q > 1) continue;
    std::vector<Rational> parts(n, q);
    parts.push_back(Rational(1) - Rational(static_cast<int>(n)) * q);
    DisjointEncoding enc = encode_disjoint(DisjointDeclaration{{}, parts});
    AnchorInstance disj;
    disj.family = "pairwise-disjoint events, q = " + Prob::exact(q).str();
    for (std::size_t i = 0; i < n; ++i) disj.events.push_back(enc.events[i]);
    for (std::size_t i = 0; i < enc.y_probs.size(); ++i) {
      disj.event_probs.set(enc.y_names[i], Prob::exact(enc.y_probs[i]));
    }
    out.push_back(std::move(disj));
  }
  if (n == 2) {
    for (int tenths = 1; tenths <= 9; ++tenths) {
      const Prob q = Prob::exact(Rational(tenths, 10));
      const Prob rmin = rho_min(q);
      for (const Prob& rho : {rmin, Prob(0), Prob(1)}) {
        CorrelatedPairSpec pair = correlated_pair(q, rho);
        AnchorInstance corr;
        corr.family = "correlated pair, q = " + q.str() + ", rho = " +
                      rho.str();
        corr.events = {pair.a, pair.b};
        corr.event_probs = pair.probs();
        out.push_back(std::move(corr));
      }
    }
  }
  return out;
}

}  // namespace

std::optional<RefuteWitness> refute_better_assignment(
    TemplateKind kind, BoundDirection direction, const Prob& p, std::size_t n,
    const std::vector<Prob>& candidate) {
  if (n < 1 || candidate.size() != n) {
    throw std::invalid_argument(
        "refute_better_assignment: candidate length must equal n >= 1");
  }
  // A member of the tight family cannot be beaten by itself.
  if (validate_assignment(kind, direction, p, candidate).status ==
      PlanStatus::tight_family) {
    return std::nullopt;
  }
  const std::vector<Prob> tight = assign_symmetric(kind, direction, p, n);

  for (AnchorInstance& inst : anchor_instances(n)) {
    const Expr phi = build_anchor_expr(kind, inst.events);
    DissociationResult d = dissociate(phi, kRefuteVar);
    ProbAssignment base = inst.event_probs;
    base.set(kRefuteVar, p);
    const Prob exact = eval_enumerate(phi, base);
    const Prob tight_bound = bound_under(d.dissociated, base, tight);
    const Prob candidate_bound = bound_under(d.dissociated, base, candidate);
    if (candidate_worse(direction, exact, tight_bound, candidate_bound)) {
      return RefuteWitness{std::move(inst.family), std::move(inst.events),
                           std::move(base),        exact,
                           tight_bound,            candidate_bound};
    }
  }
  return std::nullopt;
}

}  // namespace dissoc
