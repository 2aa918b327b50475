#pragma once

#include <string>
#include <vector>

#include "topmon/instance.hpp"
#include "topmon/report.hpp"
#include "topmon/verdict.hpp"
#include "topmon/convergence.hpp"

namespace topmon {

struct SuiteOptions {
  long long window = 12;
  long long depth = 32;
  long long level = 10;
  std::uint64_t seed = 0;
  long long qmax = 1'000'000;
  int max_factors = 3;
  long long degree = 5;
  long long generators = 4;
  int vars = 2;
  int precision = 8;

  SearchBound bound() const { return {window, degree}; }
  VerifyParams verify() const;
  InstanceParams instance_params() const;
};

// The per-instance law suites driving the module invariants. Deterministic
// given (options, seed).
SuiteReport check_laws(const std::string& instance_name, const SuiteOptions& opt);

// Scripted counterexamples; expectation-inverted entries as configured.
// Names: qplus-decimation, harmonic-closure, restricted-order-ideal,
// restricted-prime-not-topprime, integers-dissociation,
// series-almost-discrete, zh-inverse-not-continuous.
SuiteReport run_demo(const std::string& name, const SuiteOptions& opt);

std::vector<std::string> demo_names();
std::vector<std::string> law_suite_names();

}  // namespace topmon
