#include "dissoc/selfcheck.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <optional>
#include <random>
#include <utility>

#include "dissoc/bounds.hpp"
#include "dissoc/dissociation.hpp"
#include "dissoc/errors.hpp"
#include "dissoc/eval.hpp"
#include "dissoc/events.hpp"
#include "dissoc/parser.hpp"

namespace dissoc {

namespace {

// mt19937_64 output is specified by the standard, so results are portable;
// the tiny modulo bias is irrelevant for test-case generation.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t below(std::uint64_t n) { return eng() % n; }
  bool coin() { return (eng() & 1) != 0; }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rational grid5(Rng& rng) {
  static const Rational values[] = {Rational(0), Rational(1, 4),
                                    Rational(1, 2), Rational(3, 4),
                                    Rational(1)};
  return values[rng.below(5)];
}

Rational grid_open(Rng& rng) {  // interior values only
  static const Rational values[] = {Rational(1, 4), Rational(1, 2),
                                    Rational(3, 4)};
  return values[rng.below(3)];
}

Expr random_expr(Rng& rng, const std::vector<std::string>& pool, int depth,
                 bool allow_not, bool allow_const) {
  const bool leaf = depth <= 0 || rng.below(3) == 0;
  if (leaf) {
    if (allow_const && rng.below(10) == 0) {
      return Expr::constant(rng.coin());
    }
    return Expr::variable(pool[rng.below(pool.size())]);
  }
  if (allow_not && rng.below(5) == 0) {
    return Expr::negation(
        random_expr(rng, pool, depth - 1, allow_not, allow_const));
  }
  const std::size_t width = 2 + rng.below(2);
  std::vector<Expr> children;
  children.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    children.push_back(
        random_expr(rng, pool, depth - 1, allow_not, allow_const));
  }
  return rng.coin() ? Expr::conjunction(std::move(children))
                    : Expr::disjunction(std::move(children));
}

std::vector<std::string> take_pool(std::size_t n) {
  static const std::vector<std::string> all = {"a", "b", "c", "d", "e", "f",
                                               "g", "h", "i", "j", "k", "l"};
  return {all.begin(), all.begin() + static_cast<long>(n)};
}

ProbAssignment random_grid_probs(Rng& rng,
                                 const std::vector<std::string>& names) {
  ProbAssignment out;
  for (const std::string& name : names) {
    out.set(name, Prob::exact(grid5(rng)));
  }
  return out;
}

using CaseFn =
    std::function<std::optional<std::string>(Rng&, std::size_t)>;

SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                      std::size_t cases, const CaseFn& fn) {
  SuiteResult result{name};
  Rng rng(seed ^ fnv1a(name));
  for (std::size_t i = 0; i < cases; ++i) {
    std::optional<std::string> failure;
    try {
      failure = fn(rng, i);
    } catch (const std::exception& e) {
      failure = std::string("unexpected exception: ") + e.what();
    }
    if (failure) {
      ++result.failed;
      if (result.failures.size() < 5) {
        result.failures.push_back("case " + std::to_string(i) + ": " +
                                  *failure);
      }
    } else {
      ++result.passed;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// individual suites

std::optional<std::string> case_shannon_vs_enumerate(Rng& rng, std::size_t) {
  auto pool = take_pool(1 + rng.below(10));
  Expr e = random_expr(rng, pool, 4, true, true);
  ProbAssignment probs = random_grid_probs(rng, pool);
  Prob fast = eval_shannon(e, probs);
  Prob slow = eval_enumerate(e, probs);
  if (fast != slow) {
    return "eval_shannon = " + fast.str() + " but enumeration gives " +
           slow.str() + " for " + format_expr(e);
  }
  return std::nullopt;
}

std::optional<std::string> case_complement_sum(Rng& rng, std::size_t) {
  auto pool = take_pool(1 + rng.below(8));
  Expr e = random_expr(rng, pool, 4, true, true);
  ProbAssignment probs = random_grid_probs(rng, pool);
  Prob direct = eval_shannon(e, probs);
  Prob negated = eval_shannon(complement(e), probs);
  if (direct + negated != Prob(1)) {
    return "P[e] + P[!e] = " + (direct + negated).str() + " for " +
           format_expr(e);
  }
  return std::nullopt;
}

std::optional<std::string> case_identities(Rng& rng, std::size_t) {
  auto pool = take_pool(1 + rng.below(8));
  Expr a = random_expr(rng, pool, 3, true, true);
  Expr b = random_expr(rng, pool, 3, true, true);
  ProbAssignment probs = random_grid_probs(rng, pool);
  IdentityReport report = verify_identities(a, b, probs);
  for (const auto& [label, residual] :
       {std::pair{"eq1", report.eq1}, std::pair{"eq2", report.eq2},
        std::pair{"eq3", report.eq3}, std::pair{"eq4", report.eq4}}) {
    if (residual.rational() != 0) {
      return std::string(label) + " residual " + residual.str() + " for A = " +
             format_expr(a) + ", B = " + format_expr(b);
    }
  }
  return std::nullopt;
}

std::optional<std::string> case_parser_round_trip(Rng& rng, std::size_t) {
  static const std::vector<std::string> names = {"x",  "y1", "_tmp", "a'",
                                                 "Bb", "z_9"};
  Expr e = random_expr(rng, names, 4, true, true);
  std::string text = format_expr(e);
  Expr back = parse_expr(text);
  if (!(back == e)) {
    return "'" + text + "' re-parses differently: " + format_expr(back);
  }
  return std::nullopt;
}

std::optional<std::string> case_dissociation(Rng& rng, std::size_t) {
  static const std::vector<std::string> pool = {"d", "u", "v", "w"};
  Expr e = Expr::disjunction({Expr::conjunction({Expr::variable("d"),
                                                 Expr::variable("u")}),
                              Expr::conjunction({Expr::variable("d"),
                                                 Expr::variable("v")})});
  for (int attempt = 0; attempt < 20; ++attempt) {
    Expr candidate = random_expr(rng, pool, 4, true, false);
    try {
      if (count_occurrences(candidate, "d") > 0) {
        e = candidate;
        break;
      }
    } catch (const DomainError&) {
      // negated occurrence of d; resample
    }
  }
  const std::size_t count = count_occurrences(e, "d");

  DissociationResult finest = dissociate(e, "d");
  if (!check_dissociation(finest)) {
    return "finest dissociation does not substitute back for " +
           format_expr(e);
  }
  const std::set<std::string> before = free_vars(e);
  const std::set<std::string> after = free_vars(finest.dissociated);
  for (const auto& [fresh, original] : finest.theta) {
    if (before.count(fresh) != 0) {
      return "fresh name " + fresh + " already free in the original";
    }
    if (after.count(fresh) == 0) {
      return "fresh name " + fresh + " missing from the dissociation";
    }
    if (original != "d") return "theta maps " + fresh + " to " + original;
  }
  if (after.count("d") != 0) {
    return "dissociated expression still mentions d";
  }

  // random coarser partition
  std::vector<std::vector<std::size_t>> groups(1 + rng.below(count));
  for (std::size_t idx = 1; idx <= count; ++idx) {
    groups[rng.below(groups.size())].push_back(idx);
  }
  groups.erase(std::remove_if(groups.begin(), groups.end(),
                              [](const auto& g) { return g.empty(); }),
               groups.end());
  DissociationResult coarse = dissociate(e, "d", groups);
  if (!check_dissociation(coarse)) {
    return "coarse dissociation does not substitute back for " +
           format_expr(e);
  }
  return std::nullopt;
}

struct RandomTemplate {
  Template t;
  std::vector<std::string> pool;
};

RandomTemplate random_template(Rng& rng, const std::string& var) {
  RandomTemplate out{
      Template{rng.coin() ? TemplateKind::disjunctive
                          : TemplateKind::conjunctive,
               var, std::nullopt, {}},
      take_pool(1 + rng.below(6))};
  const std::size_t n = 1 + rng.below(3);
  for (std::size_t i = 0; i < n; ++i) {
    out.t.events.push_back(random_expr(rng, out.pool, 2, true, true));
  }
  if (rng.coin()) {
    out.t.a0 = random_expr(rng, out.pool, 2, true, true);
  }
  return out;
}

std::optional<std::string> case_template_reassembly(Rng& rng, std::size_t) {
  RandomTemplate rt = random_template(rng, "t_x");
  Expr phi = template_to_expr(rt.t);
  Template extracted = extract_template(phi, "t_x");
  Expr rebuilt = template_to_expr(extracted);
  ProbAssignment probs = random_grid_probs(rng, rt.pool);
  probs.set("t_x", Prob::exact(grid5(rng)));
  Prob original = eval_enumerate(phi, probs);
  Prob round = eval_enumerate(rebuilt, probs);
  if (original != round) {
    return "template reassembly changed the value of " + format_expr(phi) +
           ": " + original.str() + " vs " + round.str();
  }
  return std::nullopt;
}

std::vector<Prob> random_valid_plan(Rng& rng, TemplateKind kind,
                                    BoundDirection direction, const Prob& p,
                                    std::size_t n) {
  static const Rational fractions[] = {Rational(0), Rational(1, 4),
                                       Rational(1, 2), Rational(1)};
  auto toward_one = [&](Rng& r) {
    return Prob::exact(p.rational() +
                       fractions[r.below(4)] * (Rational(1) - p.rational()));
  };
  auto toward_zero = [&](Rng& r) {
    return Prob::exact(p.rational() * (Rational(1) - fractions[r.below(4)]));
  };
  const bool upper = direction == BoundDirection::upper;
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Prob> plan;
    plan.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      plan.push_back(upper ? toward_one(rng) : toward_zero(rng));
    }
    if (validate_assignment(kind, direction, p, plan).status !=
        PlanStatus::invalid) {
      return plan;
    }
  }
  // Boundary member that is always valid: one copy carries p, the others
  // are pinned to the neutral end for the product condition.
  std::vector<Prob> plan(n, upper ? Prob(1) : Prob(0));
  plan[0] = p;
  return plan;
}

std::optional<std::string> case_soundness(Rng& rng, std::size_t) {
  RandomTemplate rt = random_template(rng, "s_x");
  const Prob p = Prob::exact(grid5(rng));
  const BoundDirection direction =
      rng.coin() ? BoundDirection::upper : BoundDirection::lower;
  std::vector<Prob> plan =
      random_valid_plan(rng, rt.t.kind, direction, p, rt.t.n());
  if (validate_assignment(rt.t.kind, direction, p, plan).status ==
      PlanStatus::invalid) {
    return "plan generator produced an invalid plan";
  }

  Expr phi = template_to_expr(rt.t);
  ProbAssignment probs = random_grid_probs(rng, rt.pool);
  probs.set("s_x", p);
  DissociationResult d = dissociate(phi, "s_x");
  ProbAssignment bound_probs = probs;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    bound_probs.set(dissociated_name("s_x", k + 1), plan[k]);
  }
  Prob exact = eval_shannon(phi, probs);
  Prob bound = eval_shannon(d.dissociated, bound_probs);
  const bool ok = direction == BoundDirection::upper ? bound >= exact
                                                     : bound <= exact;
  if (!ok) {
    std::string plan_text;
    for (const Prob& v : plan) plan_text += v.str() + " ";
    return std::string(direction == BoundDirection::upper ? "upper" : "lower") +
           " bound " + bound.str() + " vs exact " + exact.str() + " for " +
           format_expr(phi) + " with plan " + plan_text;
  }
  return std::nullopt;
}

std::optional<std::string> case_tightness_anchor(Rng& rng, std::size_t idx) {
  const std::string x = "t_x";
  const Expr xe = Expr::variable(x);
  const Prob p = Prob::exact(grid_open(rng));
  const std::size_t n = 2 + rng.below(2);

  auto evaluate_pair = [&](const Expr& phi, const std::vector<Prob>& plan,
                           ProbAssignment probs) {
    probs.set(x, p);
    DissociationResult d = dissociate(phi, x);
    ProbAssignment bound_probs = probs;
    for (std::size_t k = 0; k < plan.size(); ++k) {
      bound_probs.set(dissociated_name(x, k + 1), plan[k]);
    }
    return std::pair{eval_enumerate(phi, probs),
                     eval_enumerate(d.dissociated, bound_probs)};
  };

  switch (idx % 4) {
    case 0: {  // pairwise-disjoint events: disjunctive upper, copies of p
      const Rational q(1, static_cast<long>(n) + 1 + rng.below(2));
      std::vector<Rational> masses(n, q);
      masses.push_back(Rational(1) - Rational(static_cast<long>(n)) * q);
      DisjointEncoding enc = encode_disjoint(DisjointDeclaration{{}, masses});
      std::vector<Expr> clauses;
      for (std::size_t i = 0; i < n; ++i) {
        clauses.push_back(Expr::conjunction({xe, enc.events[i]}));
      }
      auto [exact, bound] = evaluate_pair(
          any_of(std::move(clauses)), std::vector<Prob>(n, p),
          enc.assignment());
      if (exact != bound) {
        return "disjoint anchor not tight: exact " + exact.str() +
               ", bound " + bound.str();
      }
      return std::nullopt;
    }
    case 1: {  // identical events: conjunctive upper, product equals p
      std::vector<Prob> plan(n, Prob(1));
      Rational p1 = (Rational(1) + p.rational()) / 2;
      plan[n - 2] = Prob::exact(p1);
      plan[n - 1] = Prob::exact(Rational(p.rational() / p1));
      std::vector<Expr> clauses;
      for (std::size_t i = 0; i < n; ++i) {
        clauses.push_back(Expr::disjunction({xe, Expr::variable("_a")}));
      }
      ProbAssignment probs;
      probs.set("_a", Prob::exact(grid_open(rng)));
      auto [exact, bound] =
          evaluate_pair(all_of(std::move(clauses)), plan, probs);
      if (exact != bound) {
        return "identical conjunctive anchor not tight: exact " +
               exact.str() + ", bound " + bound.str();
      }
      return std::nullopt;
    }
    case 2: {  // identical events: disjunctive lower, complement product
      std::vector<Prob> plan(n, Prob(0));
      Rational p1 = p.rational() / 2;
      Rational p2 =
          Rational(1) - (Rational(1) - p.rational()) / (Rational(1) - p1);
      plan[n - 2] = Prob::exact(p1);
      plan[n - 1] = Prob::exact(p2);
      std::vector<Expr> clauses;
      for (std::size_t i = 0; i < n; ++i) {
        clauses.push_back(Expr::conjunction({xe, Expr::variable("_a")}));
      }
      ProbAssignment probs;
      probs.set("_a", Prob::exact(grid_open(rng)));
      auto [exact, bound] =
          evaluate_pair(any_of(std::move(clauses)), plan, probs);
      if (exact != bound) {
        return "identical disjunctive anchor not tight: exact " +
               exact.str() + ", bound " + bound.str();
      }
      return std::nullopt;
    }
    default: {  // certain union, n = 2: conjunctive lower, copies of p
      Expr a1 = Expr::disjunction({Expr::variable("_a"), Expr::variable("_b")});
      Expr a2 = Expr::disjunction(
          {Expr::negation(Expr::variable("_a")), Expr::variable("_c")});
      Expr phi = Expr::conjunction({Expr::disjunction({xe, a1}),
                                    Expr::disjunction({xe, a2})});
      ProbAssignment probs;
      probs.set("_a", Prob::exact(grid_open(rng)));
      probs.set("_b", Prob::exact(grid_open(rng)));
      probs.set("_c", Prob::exact(grid_open(rng)));
      auto [exact, bound] = evaluate_pair(phi, {p, p}, probs);
      if (exact != bound) {
        return "certain-union conjunctive anchor not tight: exact " +
               exact.str() + ", bound " + bound.str();
      }
      return std::nullopt;
    }
  }
}

std::optional<std::string> case_plan_monotone(Rng& rng, std::size_t) {
  RandomTemplate rt = random_template(rng, "m_x");
  Expr phi = template_to_expr(rt.t);
  DissociationResult d = dissociate(phi, "m_x");
  ProbAssignment probs = random_grid_probs(rng, rt.pool);
  std::vector<Prob> plan;
  for (std::size_t i = 0; i < rt.t.n(); ++i) {
    plan.push_back(Prob::exact(grid5(rng)));
  }
  ProbAssignment low = probs;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    low.set(dissociated_name("m_x", k + 1), plan[k]);
  }
  const std::size_t bump = rng.below(plan.size());
  ProbAssignment high = low;
  const Rational bumped =
      plan[bump].rational() + (Rational(1) - plan[bump].rational()) / 2;
  high.set(dissociated_name("m_x", bump + 1), Prob::exact(bumped));
  Prob lo = eval_enumerate(d.dissociated, low);
  Prob hi = eval_enumerate(d.dissociated, high);
  if (hi < lo) {
    return "raising p_" + std::to_string(bump + 1) + " lowered the bound of " +
           format_expr(d.dissociated);
  }
  return std::nullopt;
}

std::optional<std::string> case_eval_monotone(Rng& rng, std::size_t) {
  auto pool = take_pool(1 + rng.below(6));
  Expr e = random_expr(rng, pool, 4, false, true);
  std::set<std::string> fv = free_vars(e);
  if (fv.empty()) return std::nullopt;
  ProbAssignment probs = random_grid_probs(rng, pool);
  auto it = fv.begin();
  std::advance(it, rng.below(fv.size()));
  const std::string& var = *it;
  const Rational before = probs.at(var).rational();
  ProbAssignment raised = probs;
  raised.set(var, Prob::exact(before + (Rational(1) - before) / 2));
  Prob lo = eval_enumerate(e, probs);
  Prob hi = eval_enumerate(e, raised);
  if (hi < lo) {
    return "raising P[" + var + "] lowered P[" + format_expr(e) + "]";
  }
  return std::nullopt;
}

SuiteResult run_refuter_smoke() {
  SuiteResult result{"refuter_smoke"};
  auto expect = [&](bool ok, const std::string& what) {
    if (ok) {
      ++result.passed;
    } else {
      ++result.failed;
      if (result.failures.size() < 5) result.failures.push_back(what);
    }
  };
  const Prob half = Prob::exact(1, 2);
  expect(refute_better_assignment(TemplateKind::disjunctive,
                                  BoundDirection::upper, half, 2,
                                  {Prob::exact(3, 5), Prob::exact(3, 5)})
             .has_value(),
         "no witness against an inflated disjunctive upper plan");
  expect(refute_better_assignment(TemplateKind::disjunctive,
                                  BoundDirection::upper, half, 2,
                                  {Prob::exact(2, 5), half})
             .has_value(),
         "no witness against a too-small disjunctive upper plan");
  expect(!refute_better_assignment(TemplateKind::disjunctive,
                                   BoundDirection::upper, half, 2,
                                   {half, half})
              .has_value(),
         "witness found against the tight disjunctive upper family");
  expect(!refute_better_assignment(TemplateKind::conjunctive,
                                   BoundDirection::lower, half, 2,
                                   {half, half})
              .has_value(),
         "witness found against the tight conjunctive lower family");
  expect(!refute_better_assignment(
              TemplateKind::conjunctive, BoundDirection::upper,
              Prob::exact(1, 4), 2, {half, half})
              .has_value(),
         "witness found against the tight conjunctive upper family");
  expect(!refute_better_assignment(
              TemplateKind::disjunctive, BoundDirection::lower, half, 2,
              assign_symmetric(TemplateKind::disjunctive,
                               BoundDirection::lower, half, 2))
              .has_value(),
         "witness found against the tight disjunctive lower family");
  return result;
}

}  // namespace

SuiteResult run_soundness_suite(std::uint64_t seed, std::size_t cases) {
  return run_suite("bounds_soundness", seed, cases, case_soundness);
}

SuiteResult run_identity_suite(std::uint64_t seed, std::size_t cases) {
  return run_suite("probability_identities", seed, cases, case_identities);
}

std::vector<SuiteResult> run_property_suites(const VerifyOptions& options) {
  std::vector<SuiteResult> results;
  results.push_back(run_suite("shannon_matches_enumeration", options.seed,
                              options.cases, case_shannon_vs_enumerate));
  results.push_back(run_suite("complement_sums_to_one", options.seed,
                              options.cases, case_complement_sum));
  results.push_back(run_identity_suite(options.seed, options.cases));
  results.push_back(run_suite("parser_round_trip", options.seed, options.cases,
                              case_parser_round_trip));
  results.push_back(run_suite("dissociation_round_trip", options.seed,
                              options.cases, case_dissociation));
  results.push_back(run_suite("template_reassembly", options.seed,
                              options.cases, case_template_reassembly));
  results.push_back(run_soundness_suite(options.seed, options.cases));
  results.push_back(run_suite("tightness_anchors", options.seed, options.cases,
                              case_tightness_anchor));
  results.push_back(run_suite("plan_monotonicity", options.seed, options.cases,
                              case_plan_monotone));
  results.push_back(run_suite("eval_monotonicity", options.seed, options.cases,
                              case_eval_monotone));
  results.push_back(run_refuter_smoke());
  return results;
}

}  // namespace dissoc
