#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topmon/element.hpp"

namespace topmon {

// Bounds for the finite searches behind the section-1 predicates: `window`
// caps coordinate / generator indices, `degree` caps exponent totals.
struct SearchBound {
  long long window = 12;
  long long degree = 6;
  long long max_candidates = 2'000'000;  // hard cap on examined combinations
};

enum class VerdictStatus { Yes, No, Unknown };

std::string status_name(VerdictStatus s);

// Outcome of a bounded decision procedure. No always carries a witness that
// can be re-checked by direct multiplication; Unknown means the requested
// search space could not be exhausted.
struct BoundedVerdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::vector<Element> witness;
  SearchBound bound;
  std::string note;

  bool yes() const { return status == VerdictStatus::Yes; }
  bool no() const { return status == VerdictStatus::No; }
};

}  // namespace topmon
