#include "dissoc/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace dissoc {

namespace {

bool is_ident_head(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_tail(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(std::size_t start, std::size_t end,
                         const std::string& message) const {
    throw ParseError(ErrorCode::syntax_error, SourceSpan{start, end},
                     message + " at offset " + std::to_string(start));
  }

  void skip_ws() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' ||
            text[pos] == '\n')) {
      ++pos;
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  Expr parse_or() {
    std::vector<Expr> parts;
    parts.push_back(parse_and());
    while (peek() == '|') {
      ++pos;
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? std::move(parts.front())
                             : Expr::disjunction(std::move(parts));
  }

  Expr parse_and() {
    std::vector<Expr> parts;
    parts.push_back(parse_unary());
    while (peek() == '&') {
      ++pos;
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? std::move(parts.front())
                             : Expr::conjunction(std::move(parts));
  }

  Expr parse_unary() {
    if (peek() == '!') {
      ++pos;
      return Expr::negation(parse_unary());
    }
    return parse_primary();
  }

  Expr parse_primary() {
    skip_ws();
    if (pos >= text.size()) {
      fail(pos, pos, "expected an expression, found end of input");
    }
    const std::size_t start = pos;
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      Expr inner = parse_or();
      if (peek() != ')') {
        fail(pos, pos, "expected ')'");
      }
      ++pos;
      return inner;
    }
    if (c == '0' || c == '1') {
      ++pos;
      return Expr::constant(c == '1');
    }
    if (is_ident_head(c)) {
      ++pos;
      while (pos < text.size() && is_ident_tail(text[pos])) ++pos;
      return Expr::variable(std::string(text.substr(start, pos - start)));
    }
    fail(start, start + 1,
         std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expr parse_expr(std::string_view text) {
  Parser p{text};
  Expr e = p.parse_or();
  if (!p.at_end()) {
    p.fail(p.pos, text.size(), "unexpected trailing input");
  }
  return e;
}

namespace {

// Precedence: disjunction 0 < conjunction 1 < negation 2 < atoms 3.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::disjunction:
      return 0;
    case ExprKind::conjunction:
      return 1;
    case ExprKind::negation:
      return 2;
    default:
      return 3;
  }
}

void escape_name(const std::string& name, std::string& out) {
  for (char c : name) out.push_back(c == '#' ? '\'' : c);
}

void format_rec(const Expr& e, int context, std::string& out) {
  const int prec = precedence(e);
  // Chains of the same n-ary operator flatten on re-parse, so a same-
  // precedence child of '&'/'|' must keep its parentheses.
  const bool parens =
      prec < context || (prec == context && context <= 1);
  if (parens) out.push_back('(');
  switch (e.kind()) {
    case ExprKind::variable:
      escape_name(e.name(), out);
      break;
    case ExprKind::constant:
      out.push_back(e.value() ? '1' : '0');
      break;
    case ExprKind::negation:
      out.push_back('!');
      format_rec(e.children().front(), 2, out);
      break;
    case ExprKind::conjunction: {
      bool first = true;
      for (const Expr& c : e.children()) {
        if (!first) out.push_back('&');
        first = false;
        format_rec(c, 1, out);
      }
      break;
    }
    case ExprKind::disjunction: {
      bool first = true;
      for (const Expr& c : e.children()) {
        if (!first) out += " | ";
        first = false;
        format_rec(c, 0, out);
      }
      break;
    }
  }
  if (parens) out.push_back(')');
}

}  // namespace

std::string format_expr(const Expr& e) {
  std::string out;
  format_rec(e, -1, out);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i >= s.size()) return false;
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
  }
  out = negative ? BigInt(-v) : v;
  return true;
}

}  // namespace

Prob parse_prob_value(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) {
    throw ParseError(ErrorCode::syntax_error, SourceSpan{0, 0},
                     "empty probability value");
  }
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    BigInt num, den;
    if (!parse_integer(s.substr(0, slash), num) ||
        !parse_integer(s.substr(slash + 1), den) || den == 0) {
      throw ParseError(ErrorCode::syntax_error, SourceSpan{0, s.size()},
                       "malformed rational '" + std::string(s) + "'");
    }
    return Prob::exact(Rational(num, den));
  }
  BigInt whole;
  if (parse_integer(s, whole)) {
    return Prob::exact(Rational(whole));
  }
  std::string buf(s);
  char* end = nullptr;
  double d = std::strtod(buf.c_str(), &end);
  if (end == nullptr || *end != '\0' || end == buf.c_str()) {
    throw ParseError(ErrorCode::syntax_error, SourceSpan{0, s.size()},
                     "malformed probability value '" + buf + "'");
  }
  return Prob::approx(d);
}

ProbAssignment parse_probs(std::string_view text) {
  ProbAssignment out;
  std::size_t line_start = 0;
  std::size_t line_no = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    ++line_no;
    std::string_view line = text.substr(line_start, line_end - line_start);
    const SourceSpan span{line_start, line_end};
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) {
      auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(ErrorCode::syntax_error, span,
                         "line " + std::to_string(line_no) +
                             ": expected 'name = value'");
      }
      std::string name(trim(line.substr(0, eq)));
      if (name.empty() || !is_ident_head(name[0])) {
        throw ParseError(ErrorCode::syntax_error, span,
                         "line " + std::to_string(line_no) +
                             ": malformed variable name '" + name + "'");
      }
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (!is_ident_tail(name[i])) {
          throw ParseError(ErrorCode::syntax_error, span,
                           "line " + std::to_string(line_no) +
                               ": malformed variable name '" + name + "'");
        }
      }
      if (out.contains(name)) {
        throw ParseError(ErrorCode::duplicate_name, span,
                         "line " + std::to_string(line_no) +
                             ": duplicate variable '" + name + "'");
      }
      Prob value = [&] {
        try {
          return parse_prob_value(line.substr(eq + 1));
        } catch (const ParseError& e) {
          throw ParseError(e.code(), span,
                           "line " + std::to_string(line_no) + ": " +
                               e.what());
        }
      }();
      if (value < Prob(0) || value > Prob(1)) {
        throw ParseError(ErrorCode::out_of_range, span,
                         "line " + std::to_string(line_no) + ": value " +
                             value.str() + " for '" + name +
                             "' outside [0, 1]");
      }
      out.set(std::move(name), std::move(value));
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return out;
}

}  // namespace dissoc
