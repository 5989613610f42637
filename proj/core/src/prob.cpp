#include "dissoc/prob.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "dissoc/errors.hpp"

namespace dissoc {

double Prob::to_double() const {
  if (is_exact()) return rational().convert_to<double>();
  return std::get<double>(v_);
}

Rational Prob::to_rational() const {
  if (is_exact()) return rational();
  return Rational(std::get<double>(v_));
}

std::string Prob::str() const {
  if (is_exact()) {
    std::ostringstream os;
    os << numerator(rational());
    if (denominator(rational()) != 1) os << '/' << denominator(rational());
    return os.str();
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", std::get<double>(v_));
  return buf;
}

Prob operator+(const Prob& a, const Prob& b) {
  if (a.is_exact() && b.is_exact()) return Prob(a.rational() + b.rational());
  return Prob::approx(a.to_double() + b.to_double());
}

Prob operator-(const Prob& a, const Prob& b) {
  if (a.is_exact() && b.is_exact()) return Prob(a.rational() - b.rational());
  return Prob::approx(a.to_double() - b.to_double());
}

Prob operator*(const Prob& a, const Prob& b) {
  if (a.is_exact() && b.is_exact()) return Prob(a.rational() * b.rational());
  return Prob::approx(a.to_double() * b.to_double());
}

Prob operator/(const Prob& a, const Prob& b) {
  if (a.is_exact() && b.is_exact()) {
    if (b.rational() == 0) throw std::invalid_argument("division by zero");
    return Prob(a.rational() / b.rational());
  }
  return Prob::approx(a.to_double() / b.to_double());
}

Prob Prob::operator-() const {
  if (is_exact()) return Prob(-rational());
  return Prob::approx(-std::get<double>(v_));
}

int Prob::cmp(const Prob& a, const Prob& b) {
  if (a.is_exact() && b.is_exact()) {
    const Rational& x = a.rational();
    const Rational& y = b.rational();
    return x < y ? -1 : (x == y ? 0 : 1);
  }
  Rational x = a.to_rational();
  Rational y = b.to_rational();
  return x < y ? -1 : (x == y ? 0 : 1);
}

bool approx_equal(const Prob& a, const Prob& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::fabs(a.to_double() - b.to_double()) <= tol;
}

void ProbAssignment::set(std::string name, Prob value) {
  if (value < Prob(0) || value > Prob(1)) {
    throw std::invalid_argument("probability for '" + name +
                                "' outside [0, 1]: " + value.str());
  }
  values_.insert_or_assign(std::move(name), std::move(value));
}

bool ProbAssignment::contains(const std::string& name) const {
  return values_.count(name) != 0;
}

const Prob* ProbAssignment::find(const std::string& name) const {
  auto it = values_.find(name);
  return it == values_.end() ? nullptr : &it->second;
}

const Prob& ProbAssignment::at(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) {
    throw DomainError(ErrorCode::missing_probability,
                      "no probability assigned to variable '" + name + "'");
  }
  return it->second;
}

bool ProbAssignment::exact() const {
  for (const auto& [name, value] : values_) {
    if (!value.is_exact()) return false;
  }
  return true;
}

}  // namespace dissoc
