#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dissoc {

// Byte range into a source text. start <= end, both within the input length.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

enum class ErrorCode {
  // problems in input text (CLI exit code 1)
  syntax_error,
  out_of_range,
  duplicate_name,
  // violated operation preconditions (CLI exit code 2)
  missing_probability,
  too_many_variables,
  variable_absent,
  negated_occurrence,
  invalid_partition,
  fresh_name_collision,
  not_template_form,
  mixed_polarity,
  plan_mismatch,
  invalid_plan,
  prob_sum_not_one,
  rho_out_of_range,
  marginal_out_of_range,
  trivial_event,
  // guaranteed invariants that failed anyway (CLI exit code 3)
  invariant_violation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Lexical, syntactic or range problem in user-supplied text.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, SourceSpan span, std::string message)
      : Error(code, std::move(message)), span_(span) {}

  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

// A documented precondition of an operation does not hold for the given input.
class DomainError : public Error {
 public:
  DomainError(ErrorCode code, std::string message)
      : Error(code, std::move(message)) {}
};

// A result contradicts something the library guarantees (e.g. a bound that
// lands on the wrong side of the exact value). Must never happen.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(std::string message)
      : Error(ErrorCode::invariant_violation, std::move(message)) {}
};

}  // namespace dissoc
