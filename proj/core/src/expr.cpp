#include "dissoc/expr.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

#include "dissoc/errors.hpp"

namespace dissoc {

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  unsigned char head = static_cast<unsigned char>(s[0]);
  if (!std::isalpha(head) && s[0] != '_') return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (!std::isalnum(c) && s[i] != '_' && s[i] != '\'' && s[i] != '#') {
      return false;
    }
  }
  return true;
}

}  // namespace

Expr Expr::variable(std::string name) {
  if (!valid_name(name)) {
    throw std::invalid_argument("invalid variable name: '" + name + "'");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::variable;
  node->name = std::move(name);
  node->hash = combine(static_cast<std::size_t>(Kind::variable),
                       std::hash<std::string>{}(node->name));
  return Expr(std::move(node));
}

Expr Expr::constant(bool value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::constant;
  node->value = value;
  node->hash =
      combine(static_cast<std::size_t>(Kind::constant), value ? 11u : 7u);
  return Expr(std::move(node));
}

Expr Expr::negation(Expr child) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::negation;
  node->hash =
      combine(static_cast<std::size_t>(Kind::negation), child.hash());
  node->children.push_back(std::move(child));
  return Expr(std::move(node));
}

Expr Expr::conjunction(std::vector<Expr> children) {
  if (children.size() < 2) {
    throw std::invalid_argument("conjunction requires at least two children");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::conjunction;
  std::size_t h = static_cast<std::size_t>(Kind::conjunction) * 0x51ed2701u;
  for (const Expr& c : children) {
    h = combine(h, c.hash());
  }
  node->hash = h;
  node->children = std::move(children);
  return Expr(std::move(node));
}

Expr Expr::disjunction(std::vector<Expr> children) {
  if (children.size() < 2) {
    throw std::invalid_argument("disjunction requires at least two children");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::disjunction;
  std::size_t h = static_cast<std::size_t>(Kind::disjunction) * 0x7feb352du;
  for (const Expr& c : children) {
    h = combine(h, c.hash());
  }
  node->hash = h;
  node->children = std::move(children);
  return Expr(std::move(node));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::variable:
      return a.name() == b.name();
    case ExprKind::constant:
      return a.value() == b.value();
    default: {
      const auto& ca = a.children();
      const auto& cb = b.children();
      if (ca.size() != cb.size()) return false;
      for (std::size_t i = 0; i < ca.size(); ++i) {
        if (!(ca[i] == cb[i])) return false;
      }
      return true;
    }
  }
}

Expr all_of(std::vector<Expr> parts) {
  if (parts.empty()) return Expr::constant(true);
  if (parts.size() == 1) return std::move(parts.front());
  return Expr::conjunction(std::move(parts));
}

Expr any_of(std::vector<Expr> parts) {
  if (parts.empty()) return Expr::constant(false);
  if (parts.size() == 1) return std::move(parts.front());
  return Expr::disjunction(std::move(parts));
}

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case ExprKind::variable:
      out.insert(e.name());
      return;
    case ExprKind::constant:
      return;
    default:
      for (const Expr& c : e.children()) collect_vars(c, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

Expr substitute(const Expr& e,
                const std::map<std::string, std::string>& theta) {
  switch (e.kind()) {
    case ExprKind::variable: {
      auto it = theta.find(e.name());
      return it == theta.end() ? e : Expr::variable(it->second);
    }
    case ExprKind::constant:
      return e;
    default: {
      std::vector<Expr> rebuilt;
      rebuilt.reserve(e.children().size());
      bool changed = false;
      for (const Expr& c : e.children()) {
        Expr r = substitute(c, theta);
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

namespace {

Expr to_nnf(const Expr& e, bool negate) {
  switch (e.kind()) {
    case ExprKind::variable:
      return negate ? Expr::negation(e) : e;
    case ExprKind::constant:
      return negate ? Expr::constant(!e.value()) : e;
    case ExprKind::negation:
      return to_nnf(e.children().front(), !negate);
    default: {
      std::vector<Expr> parts;
      parts.reserve(e.children().size());
      for (const Expr& c : e.children()) parts.push_back(to_nnf(c, negate));
      bool make_and = (e.kind() == ExprKind::conjunction) != negate;
      return make_and ? Expr::conjunction(std::move(parts))
                      : Expr::disjunction(std::move(parts));
    }
  }
}

}  // namespace

Expr complement(const Expr& e) { return to_nnf(e, true); }

bool truth_eval(const Expr& e,
                const std::unordered_map<std::string, bool>& env) {
  switch (e.kind()) {
    case ExprKind::variable: {
      auto it = env.find(e.name());
      if (it == env.end()) {
        throw DomainError(ErrorCode::missing_probability,
                          "no value assigned to variable '" + e.name() + "'");
      }
      return it->second;
    }
    case ExprKind::constant:
      return e.value();
    case ExprKind::negation:
      return !truth_eval(e.children().front(), env);
    case ExprKind::conjunction:
      for (const Expr& c : e.children()) {
        if (!truth_eval(c, env)) return false;
      }
      return true;
    default:
      for (const Expr& c : e.children()) {
        if (truth_eval(c, env)) return true;
      }
      return false;
  }
}

}  // namespace dissoc
