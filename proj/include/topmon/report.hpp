#pragma once

#include <map>
#include <string>
#include <vector>

namespace topmon {

enum class CheckOutcome { Pass, Fail, Inconclusive };
std::string outcome_name(CheckOutcome o);

// One verdict line of a suite. `expect_fail` inverts the expectation for the
// documented counterexamples: a FAIL there is the desired outcome and keeps
// the exit code at zero.
struct CheckResult {
  std::string id;         // stable, canonical ordering key
  std::string statement;  // the mathematical statement being exercised
  CheckOutcome outcome = CheckOutcome::Inconclusive;
  bool expect_fail = false;
  std::vector<std::pair<std::string, std::string>> params;  // key=val, insertion order
  std::string witness;

  bool as_expected() const {
    if (expect_fail) return outcome != CheckOutcome::Pass;
    return outcome != CheckOutcome::Fail;
  }
};

struct SuiteReport {
  std::string suite;  // e.g. "check-laws free" or "demo restricted-order-ideal"
  std::vector<std::pair<std::string, std::string>> config;  // flags incl. seed
  std::vector<CheckResult> checks;

  void add(CheckResult r) { checks.push_back(std::move(r)); }
  // exit code 0 iff no unexpected FAIL and no unexpected PASS
  int exit_code() const;
  void sort_by_id();
};

// Line-oriented form:
//   CHECK <id> <PASS|FAIL|INCONCLUSIVE> ref="<statement>" <key=val ...>
std::string render_text(const SuiteReport& r);
// Versioned structured dump (schema topmon-report/1); byte-deterministic
// given (config, seed, version).
std::string render_structured(const SuiteReport& r);

}  // namespace topmon
