#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dissoc {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few failure messages
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 200;  // randomized cases per suite
};

// All randomized property suites. Output is deterministic for a fixed seed.
std::vector<SuiteResult> run_property_suites(const VerifyOptions& options);

// Directional soundness of dissociation bounds: random one-level templates
// (n <= 3, events over <= 6 variables, probabilities from the grid
// {0, 1/4, 1/2, 3/4, 1}) with random valid plans, checked under exact
// rational arithmetic.
SuiteResult run_soundness_suite(std::uint64_t seed, std::size_t cases);

// Inclusion-exclusion and event-splitting residuals on random expression
// pairs; every residual must be exactly zero under rational arithmetic.
SuiteResult run_identity_suite(std::uint64_t seed, std::size_t cases);

}  // namespace dissoc
