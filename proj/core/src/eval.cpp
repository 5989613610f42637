#include "dissoc/eval.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dissoc/errors.hpp"

namespace dissoc {

namespace {

template <class T>
T from_prob(const Prob& p);

template <>
Rational from_prob<Rational>(const Prob& p) {
  return p.to_rational();
}

template <>
double from_prob<double>(const Prob& p) {
  return p.to_double();
}

std::set<std::string> checked_vars(const Expr& e, const ProbAssignment& probs,
                                   int cap) {
  std::set<std::string> fv = free_vars(e);
  for (const std::string& name : fv) {
    if (!probs.contains(name)) {
      throw DomainError(ErrorCode::missing_probability,
                        "no probability assigned to variable '" + name + "'");
    }
  }
  if (static_cast<int>(fv.size()) > cap) {
    throw DomainError(ErrorCode::too_many_variables,
                      "expression has " + std::to_string(fv.size()) +
                          " variables, cap is " + std::to_string(cap));
  }
  return fv;
}

template <class T>
std::vector<std::pair<std::string, T>> ordered_probs(
    const std::set<std::string>& names, const ProbAssignment& probs) {
  std::vector<std::pair<std::string, T>> out;
  out.reserve(names.size());
  for (const std::string& name : names) {
    out.emplace_back(name, from_prob<T>(probs.at(name)));
  }
  return out;
}

// Depth-first walk over all 2^k assignments of `vars`, carrying the running
// product of per-variable weights; `visit(env, weight)` fires at each leaf.
template <class T, class Visit>
void walk_assignments(const std::vector<std::pair<std::string, T>>& vars,
                      std::size_t i,
                      std::unordered_map<std::string, bool>& env, const T& w,
                      Visit&& visit) {
  if (i == vars.size()) {
    visit(env, w);
    return;
  }
  const auto& [name, p] = vars[i];
  env[name] = true;
  walk_assignments(vars, i + 1, env, T(w * p), visit);
  env[name] = false;
  walk_assignments(vars, i + 1, env, T(w * (T(1) - p)), visit);
}

template <class T>
T enumerate_impl(const Expr& e, const std::set<std::string>& fv,
                 const ProbAssignment& probs) {
  auto vars = ordered_probs<T>(fv, probs);
  std::unordered_map<std::string, bool> env;
  T acc(0);
  walk_assignments<T>(vars, 0, env, T(1),
                      [&](const std::unordered_map<std::string, bool>& a,
                          const T& w) {
                        if (truth_eval(e, a)) acc += w;
                      });
  return acc;
}

// Restrict `var` (when given) to `value` and fold constants bottom-up.
// Untouched subtrees are shared with the input.
Expr restrict_fold(const Expr& e, const std::string* var, bool value) {
  switch (e.kind()) {
    case ExprKind::variable:
      if (var != nullptr && e.name() == *var) return Expr::constant(value);
      return e;
    case ExprKind::constant:
      return e;
    case ExprKind::negation: {
      Expr c = restrict_fold(e.children().front(), var, value);
      if (c.kind() == ExprKind::constant) return Expr::constant(!c.value());
      if (c == e.children().front()) return e;
      return Expr::negation(std::move(c));
    }
    case ExprKind::conjunction:
    case ExprKind::disjunction: {
      const bool is_and = e.kind() == ExprKind::conjunction;
      std::vector<Expr> kept;
      kept.reserve(e.children().size());
      bool changed = false;
      for (const Expr& child : e.children()) {
        Expr c = restrict_fold(child, var, value);
        if (!(c == child)) changed = true;
        if (c.kind() == ExprKind::constant) {
          changed = true;
          if (c.value() == is_and) continue;      // neutral element, drop
          return Expr::constant(!is_and);         // absorbing element
        }
        kept.push_back(std::move(c));
      }
      if (!changed) return e;
      if (kept.empty()) return Expr::constant(is_and);
      if (kept.size() == 1) return std::move(kept.front());
      return is_and ? Expr::conjunction(std::move(kept))
                    : Expr::disjunction(std::move(kept));
    }
  }
  return e;  // unreachable
}

// Most frequently occurring variable, ties broken by name. Conditioning on
// it removes every occurrence at once, which keeps the recursion shallow.
std::string pick_branch_var(const Expr& e) {
  std::map<std::string, std::size_t> counts;
  auto count = [&](const Expr& x, auto&& self) -> void {
    switch (x.kind()) {
      case ExprKind::variable:
        ++counts[x.name()];
        return;
      case ExprKind::constant:
        return;
      default:
        for (const Expr& c : x.children()) self(c, self);
    }
  };
  count(e, count);
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [name, n] : counts) {
    if (n > best_count) {
      best = name;
      best_count = n;
    }
  }
  return best;
}

template <class T>
class ShannonEvaluator {
 public:
  explicit ShannonEvaluator(const ProbAssignment& probs) {
    for (const auto& [name, p] : probs) probs_.emplace(name, from_prob<T>(p));
  }

  T eval(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::constant:
        return T(e.value() ? 1 : 0);
      case ExprKind::variable:
        return probs_.at(e.name());
      case ExprKind::negation:
        return T(T(1) - eval(e.children().front()));
      default: {
        auto it = memo_.find(e);
        if (it != memo_.end()) return it->second;
        std::string v = pick_branch_var(e);
        const T& p = probs_.at(v);
        T hi = eval(restrict_fold(e, &v, true));
        T lo = eval(restrict_fold(e, &v, false));
        T r = T(p * hi + T(T(1) - p) * lo);
        memo_.emplace(e, r);
        return r;
      }
    }
  }

 private:
  std::unordered_map<std::string, T> probs_;
  std::unordered_map<Expr, T, ExprHash> memo_;
};

}  // namespace

Prob eval_enumerate(const Expr& e, const ProbAssignment& probs, int cap) {
  std::set<std::string> fv = checked_vars(e, probs, cap);
  if (probs.exact()) {
    return Prob::exact(enumerate_impl<Rational>(e, fv, probs));
  }
  return Prob::approx(enumerate_impl<double>(e, fv, probs));
}

Prob eval_shannon(const Expr& e, const ProbAssignment& probs, int cap) {
  checked_vars(e, probs, cap);
  Expr folded = restrict_fold(e, nullptr, false);
  if (probs.exact()) {
    ShannonEvaluator<Rational> ev(probs);
    return Prob::exact(ev.eval(folded));
  }
  ShannonEvaluator<double> ev(probs);
  return Prob::approx(ev.eval(folded));
}

namespace {

template <class T>
struct IdentitySums {
  T p_a{0}, p_b{0}, p_and{0}, p_or{0}, p_a_not_b{0}, p_a_or_not_b{0};
};

template <class T>
IdentitySums<T> identity_sums(const Expr& a, const Expr& b,
                              const std::set<std::string>& fv,
                              const ProbAssignment& probs) {
  auto vars = ordered_probs<T>(fv, probs);
  std::unordered_map<std::string, bool> env;
  IdentitySums<T> s;
  walk_assignments<T>(
      vars, 0, env, T(1),
      [&](const std::unordered_map<std::string, bool>& asg, const T& w) {
        const bool ta = truth_eval(a, asg);
        const bool tb = truth_eval(b, asg);
        if (ta) s.p_a += w;
        if (tb) s.p_b += w;
        if (ta && tb) s.p_and += w;
        if (ta || tb) s.p_or += w;
        if (ta && !tb) s.p_a_not_b += w;
        if (ta || !tb) s.p_a_or_not_b += w;
      });
  return s;
}

template <class T>
IdentityReport make_report(const IdentitySums<T>& s, bool exact) {
  auto wrap = [exact](const T& v) {
    if constexpr (std::is_same_v<T, Rational>) {
      (void)exact;
      return Prob::exact(v);
    } else {
      (void)exact;
      return Prob::approx(v);
    }
  };
  IdentityReport r{wrap(s.p_a),
                   wrap(s.p_b),
                   wrap(s.p_and),
                   wrap(s.p_or),
                   wrap(s.p_a_not_b),
                   wrap(s.p_a_or_not_b),
                   wrap(T(s.p_or - (s.p_a + s.p_b - s.p_and))),
                   wrap(T(s.p_and - (s.p_a + s.p_b - s.p_or))),
                   wrap(T(s.p_or - (s.p_a_not_b + s.p_b))),
                   wrap(T(s.p_and - (s.p_a_or_not_b + s.p_b - T(1))))};
  return r;
}

}  // namespace

bool IdentityReport::all_zero(double tol) const {
  for (const Prob* r : {&eq1, &eq2, &eq3, &eq4}) {
    if (r->is_exact()) {
      if (r->rational() != 0) return false;
    } else if (std::fabs(r->to_double()) > tol) {
      return false;
    }
  }
  return true;
}

IdentityReport verify_identities(const Expr& a, const Expr& b,
                                 const ProbAssignment& probs) {
  std::set<std::string> fv = free_vars(a);
  std::set<std::string> fb = free_vars(b);
  fv.insert(fb.begin(), fb.end());
  for (const std::string& name : fv) {
    if (!probs.contains(name)) {
      throw DomainError(ErrorCode::missing_probability,
                        "no probability assigned to variable '" + name + "'");
    }
  }
  if (static_cast<int>(fv.size()) > kEnumerationCap) {
    throw DomainError(ErrorCode::too_many_variables,
                      "expression pair has " + std::to_string(fv.size()) +
                          " variables, cap is " +
                          std::to_string(kEnumerationCap));
  }
  if (probs.exact()) {
    return make_report(identity_sums<Rational>(a, b, fv, probs), true);
  }
  return make_report(identity_sums<double>(a, b, fv, probs), false);
}

}  // namespace dissoc
