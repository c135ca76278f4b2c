#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grassop/serialize.hpp"

namespace grassop {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int trials = 20;
  int max_ambient = 12;
  // Empty: every test samples its own signatures.
  std::vector<ClassSignature> signatures;
  Tolerance tol;
  // Empty: run every test.
  std::vector<std::string> only;

  // Throws InvalidInput (trials < 1, max_ambient outside [4, 64]).
  void validate() const;
};

struct SuiteFailure {
  int trial = 0;
  std::string message;
  Json payload;  // operators involved, serialized
};

struct TestResult {
  std::string name;
  std::string property;
  int trials = 0;
  int failures = 0;
  std::vector<SuiteFailure> examples;  // first few failures
  double seconds = 0.0;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<TestResult> tests;

  bool passed() const;
  // Wall time is included only on request so reports stay byte-identical.
  Json to_json(bool with_timing = false) const;
};

std::vector<std::string> suite_test_names();

// Random signature: k eigenvalues, multiplicities in [n_min, n_max], ambient
// dimension at most max_ambient (multiplicities are trimmed to fit).
ClassSignature random_signature(Rng& rng, int k, int n_min, int n_max, int max_ambient);

// Throws InvalidInput for an unknown name in config.only.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace grassop
