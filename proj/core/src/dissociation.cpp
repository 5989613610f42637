#include "dissoc/dissociation.hpp"

#include <algorithm>
#include <utility>

#include "dissoc/errors.hpp"

namespace dissoc {

std::string dissociated_name(const std::string& var, std::size_t group) {
  return var + "#" + std::to_string(group);
}

namespace {

void scan_occurrences(const Expr& e, const std::string& var, bool under_not,
                      std::size_t& count) {
  switch (e.kind()) {
    case ExprKind::variable:
      if (e.name() == var) {
        if (under_not) {
          throw DomainError(ErrorCode::negated_occurrence,
                            "variable '" + var +
                                "' occurs below a negation and cannot be "
                                "dissociated");
        }
        ++count;
      }
      return;
    case ExprKind::constant:
      return;
    case ExprKind::negation:
      scan_occurrences(e.children().front(), var, true, count);
      return;
    default:
      for (const Expr& c : e.children()) {
        scan_occurrences(c, var, under_not, count);
      }
  }
}

Expr rename_occurrences(const Expr& e, const std::string& var,
                        const std::vector<std::string>& names,
                        std::size_t& next) {
  switch (e.kind()) {
    case ExprKind::variable:
      if (e.name() == var) return Expr::variable(names[next++]);
      return e;
    case ExprKind::constant:
      return e;
    default: {
      std::vector<Expr> rebuilt;
      rebuilt.reserve(e.children().size());
      bool changed = false;
      for (const Expr& c : e.children()) {
        Expr r = rename_occurrences(c, var, names, next);
        if (!(r == c)) changed = true;
        rebuilt.push_back(std::move(r));
      }
      if (!changed) return e;
      switch (e.kind()) {
        case ExprKind::negation:
          return Expr::negation(std::move(rebuilt.front()));
        case ExprKind::conjunction:
          return Expr::conjunction(std::move(rebuilt));
        default:
          return Expr::disjunction(std::move(rebuilt));
      }
    }
  }
}

}  // namespace

std::size_t count_occurrences(const Expr& e, const std::string& var) {
  std::size_t count = 0;
  scan_occurrences(e, var, false, count);
  return count;
}

DissociationResult dissociate(
    const Expr& e, const std::string& var,
    const std::vector<std::vector<std::size_t>>& groups) {
  const std::size_t count = count_occurrences(e, var);
  if (count == 0) {
    throw DomainError(ErrorCode::variable_absent,
                      "variable '" + var + "' does not occur in the expression");
  }

  std::vector<std::size_t> owner(count, 0);  // occurrence index -> group (1-based)
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (groups[k].empty()) {
      throw DomainError(ErrorCode::invalid_partition,
                        "group " + std::to_string(k + 1) + " is empty");
    }
    for (std::size_t idx : groups[k]) {
      if (idx < 1 || idx > count) {
        throw DomainError(ErrorCode::invalid_partition,
                          "occurrence index " + std::to_string(idx) +
                              " out of range 1.." + std::to_string(count));
      }
      if (owner[idx - 1] != 0) {
        throw DomainError(ErrorCode::invalid_partition,
                          "occurrence " + std::to_string(idx) +
                              " listed in more than one group");
      }
      owner[idx - 1] = k + 1;
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (owner[i] == 0) {
      throw DomainError(ErrorCode::invalid_partition,
                        "occurrence " + std::to_string(i + 1) +
                            " is not covered by any group");
    }
  }

  const std::set<std::string> existing = free_vars(e);
  std::vector<std::string> fresh(groups.size());
  std::map<std::string, std::string> theta;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    fresh[k] = dissociated_name(var, k + 1);
    if (existing.count(fresh[k]) != 0) {
      throw DomainError(ErrorCode::fresh_name_collision,
                        "generated name '" + fresh[k] +
                            "' already occurs in the expression");
    }
    theta.emplace(fresh[k], var);
  }

  std::vector<std::string> occurrence_names(count);
  for (std::size_t i = 0; i < count; ++i) {
    occurrence_names[i] = fresh[owner[i] - 1];
  }
  std::size_t next = 0;
  Expr dissociated = rename_occurrences(e, var, occurrence_names, next);

  return DissociationResult{e, std::move(dissociated), std::move(theta),
                            groups};
}

DissociationResult dissociate(const Expr& e, const std::string& var) {
  const std::size_t count = count_occurrences(e, var);
  if (count == 0) {
    throw DomainError(ErrorCode::variable_absent,
                      "variable '" + var + "' does not occur in the expression");
  }
  std::vector<std::vector<std::size_t>> finest(count);
  for (std::size_t i = 0; i < count; ++i) finest[i] = {i + 1};
  return dissociate(e, var, finest);
}

bool check_dissociation(const DissociationResult& result) {
  return substitute(result.dissociated, result.theta) == result.original;
}

namespace {

std::size_t occurrences_in(const Expr& e, const std::string& var) {
  switch (e.kind()) {
    case ExprKind::variable:
      return e.name() == var ? 1 : 0;
    case ExprKind::constant:
      return 0;
    default: {
      std::size_t n = 0;
      for (const Expr& c : e.children()) n += occurrences_in(c, var);
      return n;
    }
  }
}

[[noreturn]] void not_template(const std::string& var,
                               const std::string& why) {
  throw DomainError(ErrorCode::not_template_form,
                    "expression is not in one-level form for '" + var +
                        "': " + why);
}

}  // namespace

Template extract_template(const Expr& e, const std::string& var) {
  // A single polarity scan produces both VariableAbsent and MixedPolarity.
  std::size_t total = 0;
  try {
    scan_occurrences(e, var, false, total);
  } catch (const DomainError& err) {
    if (err.code() != ErrorCode::negated_occurrence) throw;
    throw DomainError(ErrorCode::mixed_polarity,
                      "variable '" + var +
                          "' occurs below a negation; templates require "
                          "positive occurrences only");
  }
  if (total == 0) {
    throw DomainError(ErrorCode::variable_absent,
                      "variable '" + var + "' does not occur in the expression");
  }

  if (e.kind() == ExprKind::variable) {
    // Bare x: the degenerate disjunctive template x & 1.
    return Template{TemplateKind::disjunctive, var, std::nullopt,
                    {Expr::constant(true)}};
  }
  if (e.kind() != ExprKind::conjunction && e.kind() != ExprKind::disjunction) {
    not_template(var, "top level is not a conjunction or disjunction");
  }

  const bool disjunctive = e.kind() == ExprKind::disjunction;
  const TemplateKind kind =
      disjunctive ? TemplateKind::disjunctive : TemplateKind::conjunctive;
  // Inside a clause the variable must be a direct member of the clause's
  // own operator, which is the dual of the top-level one.
  const ExprKind clause_kind =
      disjunctive ? ExprKind::conjunction : ExprKind::disjunction;

  std::vector<Expr> a0_parts;
  std::vector<Expr> events;
  for (const Expr& child : e.children()) {
    const std::size_t occ = occurrences_in(child, var);
    if (occ == 0) {
      a0_parts.push_back(child);
      continue;
    }
    if (child.kind() == ExprKind::variable) {  // the clause is var alone
      events.push_back(Expr::constant(disjunctive));
      continue;
    }
    if (child.kind() != clause_kind) {
      not_template(var, "variable is nested deeper than one level");
    }
    if (occ != 1) {
      not_template(var, "variable occurs more than once in one clause");
    }
    std::vector<Expr> rest;
    rest.reserve(child.children().size() - 1);
    bool direct = false;
    for (const Expr& part : child.children()) {
      if (part.kind() == ExprKind::variable && part.name() == var) {
        direct = true;
      } else {
        rest.push_back(part);
      }
    }
    if (!direct) {
      not_template(var, "variable is nested deeper than one level");
    }
    events.push_back(disjunctive ? all_of(std::move(rest))
                                 : any_of(std::move(rest)));
  }

  std::optional<Expr> a0;
  if (!a0_parts.empty()) {
    a0 = disjunctive ? any_of(std::move(a0_parts))
                     : all_of(std::move(a0_parts));
  }
  return Template{kind, var, std::move(a0), std::move(events)};
}

Expr template_to_expr(const Template& t) {
  std::vector<Expr> clauses;
  if (t.a0.has_value()) clauses.push_back(*t.a0);
  const Expr x = Expr::variable(t.var);
  for (const Expr& a : t.events) {
    if (t.kind == TemplateKind::disjunctive) {
      clauses.push_back(Expr::conjunction({x, a}));
    } else {
      clauses.push_back(Expr::disjunction({x, a}));
    }
  }
  return t.kind == TemplateKind::disjunctive ? any_of(std::move(clauses))
                                             : all_of(std::move(clauses));
}

}  // namespace dissoc
