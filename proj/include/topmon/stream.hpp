#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "topmon/instance.hpp"

namespace topmon {

struct ExponentMap;  // factorisation.hpp

// --- generator rules ------------------------------------------------------
//
// A FactorStream is a countable indexed family of factors with
// multiplicities. Enumeration is deterministic and repeatable; rules carry
// enough structure for exact tail reasoning (value tails, touched
// coordinates) which the divergence strategies rely on.

struct ExplicitRule {
  // (factor, multiplicity); rule index = position (0-based)
  std::vector<std::pair<Element, long long>> factors;
};

struct GeometricRule {
  Rat ratio;      // term at rule index k >= 1 is scale * ratio^k (QPlus)
  Rat scale = 1;
};

struct ChiFromRule {
  long long start = 0;  // chi_start, chi_{start+1}, ... ; rule index = coordinate
};

struct ConstantRule {
  Element x;  // x, x, x, ... (the (x^n) net); rule index k >= 1
};

struct HarmonicFromRule {
  long long start = 1;  // e_start, e_{start+1}, ...; rule index = basis index
};

struct IntegersFromRule {
  long long start = 1;  // start, start+1, ...; rule index = the integer
};

struct IntegersPairedRule {
  // +1, -1, +2, -2, ...; rule index k >= 1 maps to (-1)^(k+1) * ceil(k/2)
};

struct AtomPowersRule {
  // atom^m(atom) over the instance's atom universe; specials first, then
  // coordinate atoms ascending (extends beyond the window when base > 0).
  std::shared_ptr<ExponentMap> map;
  SearchBound bound;
};

class FactorStream;

struct InterleaveRule {
  // disjoint union of component streams, enumerated round-robin
  std::shared_ptr<std::vector<FactorStream>> parts;
};

using StreamRule = std::variant<ExplicitRule, GeometricRule, ChiFromRule, ConstantRule,
                                HarmonicFromRule, IntegersFromRule, IntegersPairedRule,
                                AtomPowersRule, InterleaveRule>;

// Index filter applied to a rule's natural indices.
struct IndexSelector {
  enum class Kind { All, Squares, Evens, Odds, Keep, Drop };
  Kind kind = Kind::All;
  std::set<long long> set;  // Keep / Drop

  bool admits(long long rule_index) const;
  static IndexSelector all() { return {}; }
  static IndexSelector squares() { return {Kind::Squares, {}}; }
  static IndexSelector evens() { return {Kind::Evens, {}}; }
  static IndexSelector odds() { return {Kind::Odds, {}}; }
  static IndexSelector keep(std::set<long long> s) { return {Kind::Keep, std::move(s)}; }
  static IndexSelector drop(std::set<long long> s) { return {Kind::Drop, std::move(s)}; }
};

struct StreamTerm {
  long long position = 0;    // 0-based enumerated position after selection
  long long rule_index = 0;  // the rule's own index
  Element factor;
  long long mult = 1;
};

class FactorStream {
 public:
  FactorStream(InstanceKind kind, StreamRule rule, IndexSelector sel = IndexSelector::all());

  InstanceKind kind() const { return kind_; }
  const StreamRule& rule() const { return rule_; }
  const IndexSelector& selector() const { return sel_; }

  // First `count` terms (fewer when the stream is shorter). Factors of the
  // reduced instances are checked to be non-units; the integers demo is the
  // flagged exception.
  std::vector<StreamTerm> enumerate(const Instance& ins, long long count) const;

  // True when the whole stream fits within `horizon` terms.
  bool finite_within(const Instance& ins, long long horizon) const;

  // Exact upper bound on the value-sum of all terms beyond enumerated
  // position `after` (ValueBall instances; nullopt when unavailable).
  std::optional<Rat> tail_value_bound(const Instance& ins, long long after) const;

  // True when the value tail provably admits finite subsets of arbitrarily
  // large sum (constant non-unit, harmonic family, integer ramps).
  bool tail_nonsummable(const Instance& ins) const;

  // For prefix instances: exact total multiplicity contributed to coordinate
  // i by the *entire* stream (nullopt when not known exactly).
  std::optional<long long> coordinate_total(const Instance& ins, long long i) const;

  // Pointwise limit of a coordinate-finite sequence stream, when it is
  // encodable as base+delta. Does not check carrier membership.
  std::optional<Element> pointwise_limit(const Instance& ins) const;

  std::string describe() const;

 private:
  InstanceKind kind_;
  StreamRule rule_;
  IndexSelector sel_;
};

FactorStream explicit_stream(InstanceKind kind, std::vector<std::pair<Element, long long>> factors);
FactorStream geometric_stream(const Rat& ratio);  // QPlus

Element eval_partial(const Instance& ins, const std::vector<StreamTerm>& terms,
                     const std::vector<long long>& positions);
Element eval_all(const Instance& ins, const std::vector<StreamTerm>& terms);

}  // namespace topmon
