#include "topmon/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace topmon {

std::string outcome_name(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::Pass: return "PASS";
    case CheckOutcome::Fail: return "FAIL";
    case CheckOutcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

int SuiteReport::exit_code() const {
  for (const auto& c : checks)
    if (!c.as_expected()) return 1;
  return 0;
}

void SuiteReport::sort_by_id() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
}

namespace {

std::string quote(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string render_text(const SuiteReport& r) {
  std::ostringstream os;
  os << "SUITE " << r.suite << "\n";
  for (auto& [k, v] : r.config) os << "CONFIG " << k << "=" << v << "\n";
  for (const auto& c : r.checks) {
    os << "CHECK " << c.id << " " << outcome_name(c.outcome) << " ref=\"" << quote(c.statement)
       << "\"";
    if (c.expect_fail) os << " expected=FAIL";
    for (auto& [k, v] : c.params) os << " " << k << "=" << v;
    if (!c.witness.empty()) os << " witness=\"" << quote(c.witness) << "\"";
    os << "\n";
  }
  int unexpected = 0;
  for (const auto& c : r.checks)
    if (!c.as_expected()) ++unexpected;
  os << "RESULT " << (unexpected == 0 ? "OK" : "UNEXPECTED") << " checks=" << r.checks.size()
     << " unexpected=" << unexpected << "\n";
  return os.str();
}

std::string render_structured(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "topmon-report/1";
  j["suite"] = r.suite;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["ref"] = c.statement;
    e["outcome"] = outcome_name(c.outcome);
    e["expected"] = c.expect_fail ? "FAIL" : "PASS";
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (auto& [k, v] : c.params) params[k] = v;
    e["params"] = params;
    if (!c.witness.empty()) e["witness"] = c.witness;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["exit_code"] = r.exit_code();
  return j.dump(2) + "\n";
}

}  // namespace topmon
