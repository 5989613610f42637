#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <variant>

namespace dissoc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A probability-like quantity that is either an exact rational or a binary64
// value. Arithmetic stays exact as long as every operand is exact and drops
// to binary64 as soon as one operand is approximate. Comparisons are always
// mathematically exact (a double compares as the rational it denotes);
// tolerance-based checks are explicit via approx_equal().
//
// The same type carries probabilities, gaps between bounds, and correlation
// values, so no [0,1] range restriction is built in; ProbAssignment enforces
// the range where it is required.
class Prob {
 public:
  Prob() : v_(Rational(0)) {}
  Prob(int n) : v_(Rational(n)) {}  // NOLINT: implicit by design, Prob(1) - p
  explicit Prob(Rational r) : v_(std::move(r)) {}

  static Prob exact(Rational r) { return Prob(std::move(r)); }
  static Prob exact(long num, long den) { return Prob(Rational(num, den)); }
  static Prob approx(double d) {
    Prob p;
    p.v_ = d;
    return p;
  }

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const { return std::get<Rational>(v_); }
  double to_double() const;
  // Exact value as a rational; approximate values expand to the exact
  // rational the binary64 number denotes.
  Rational to_rational() const;

  // "a/b" (plain integer when b == 1) for exact values, %.12g otherwise.
  std::string str() const;

  friend Prob operator+(const Prob& a, const Prob& b);
  friend Prob operator-(const Prob& a, const Prob& b);
  friend Prob operator*(const Prob& a, const Prob& b);
  friend Prob operator/(const Prob& a, const Prob& b);
  Prob operator-() const;

  friend bool operator==(const Prob& a, const Prob& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Prob& a, const Prob& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Prob& a, const Prob& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Prob& a, const Prob& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Prob& a, const Prob& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Prob& a, const Prob& b) { return cmp(a, b) >= 0; }

 private:
  static int cmp(const Prob& a, const Prob& b);

  std::variant<Rational, double> v_;
};

// Exact equality when both values are exact, |a - b| <= tol otherwise.
bool approx_equal(const Prob& a, const Prob& b, double tol);

// Map from variable name to probability. Every value is kept in [0, 1].
// The assignment as a whole is "exact" only if every stored value is an
// exact rational; evaluators use binary64 arithmetic otherwise.
class ProbAssignment {
 public:
  ProbAssignment() = default;

  // Throws std::invalid_argument if value is outside [0, 1].
  void set(std::string name, Prob value);
  bool contains(const std::string& name) const;
  const Prob* find(const std::string& name) const;
  // Throws DomainError(missing_probability) when absent.
  const Prob& at(const std::string& name) const;

  bool exact() const;
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::map<std::string, Prob> values_;
};

}  // namespace dissoc
