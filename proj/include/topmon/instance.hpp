#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topmon/element.hpp"
#include "topmon/verdict.hpp"

namespace topmon {

// How an instance's countable decreasing neighborhood basis U_k(x) is realized.
enum class TopologyStyle {
  Discrete,         // U_k(x) = {x}
  ValueBall,        // U_k(x) = { y : |value(y) - value(x)| < 2^-k }
  PrefixAgreement,  // U_k(x) = { y : y(i) = x(i) for i < k }
  DegreeAgreement   // U_k(x) = { y : y = x in all total degrees < min(k, prec) }
};

struct InstanceParams {
  long long generators = 4;  // free
  long long window = 12;     // sequence / harmonic coordinate window
  int vars = 2;              // series
  int precision = 8;         // series truncation degree
};

// Atom bookkeeping for the Z(H) layer. Coordinate atoms form a family indexed
// by 0,1,2,... (conceptually infinite for the sequence-type instances);
// special atoms (e.g. the constant-one sequence) come after them in the fixed
// enumeration order.
struct AtomUniverse {
  std::vector<Element> coord_atoms;  // within the window, index order
  bool coord_infinite = false;       // family extends beyond the window
  std::vector<Element> special_atoms;

  long long window_size() const {
    return static_cast<long long>(coord_atoms.size() + special_atoms.size());
  }
};

// A monoid bundled with its canonical element encoding, neighborhood-basis
// oracle, window enumeration and divergence-detection hooks. Instances are
// immutable after construction and all operations are pure.
class Instance {
 public:
  virtual ~Instance() = default;

  InstanceKind kind() const { return kind_; }
  const InstanceParams& params() const { return params_; }
  std::string name() const { return kind_name(kind_); }
  // Only the integers demo is non-reduced; it is excluded from the suites
  // that rely on the standing assumptions.
  bool reduced() const { return kind_ != InstanceKind::IntegersDemo; }
  virtual TopologyStyle topology() const = 0;

  virtual Element identity() const = 0;
  virtual Element combine(const Element& a, const Element& b) const = 0;
  // The unique c with combine(a, c) = b, when it exists in the carrier.
  virtual std::optional<Element> divides(const Element& a, const Element& b) const = 0;
  virtual Element scale(const Element& x, long long n) const;  // n-fold combine
  Element power(const Element& x, long long n) const;

  bool is_unit(const Element& x) const;
  virtual bool in_carrier(const Element& x) const = 0;

  bool neighborhood_contains(const Element& center, long long level, const Element& x) const;

  // ValueBall instances: the exact value driving the metric-like basis.
  virtual Rat value(const Element& x) const;
  // Series: least total degree with a nonzero coefficient (prec when none
  // below the precision; 0 for the identity by convention).
  virtual long long valuation(const Element& x) const;
  // PrefixAgreement instances: coordinate access.
  virtual long long coordinate(const Element& x, long long i) const;

  // Deterministic enumeration of non-unit carrier elements used by the
  // bounded searches. Ordering is stable across runs.
  virtual std::vector<Element> window_elements(const SearchBound& b) const = 0;
  // Candidate divisors of x. `complete` reports whether the enumeration
  // provably covers all carrier divisors of x (within the encoding).
  virtual std::vector<Element> enumerate_divisors(const Element& x, const SearchBound& b,
                                                  bool* complete) const = 0;
  // Irreducibility candidates; certified by is_irreducible by the caller.
  virtual std::vector<Element> atom_candidates(const SearchBound& b) const;

  virtual AtomUniverse atom_universe(const SearchBound& b) const;

  void require_same_instance(const Element& x) const;

 protected:
  Instance(InstanceKind k, InstanceParams p) : kind_(k), params_(p) {}

  InstanceKind kind_;
  InstanceParams params_;
};

// kind in {free, qplus, harmonic, series, pointwise, restricted, integers-demo}
std::shared_ptr<const Instance> make_instance(InstanceKind kind, InstanceParams params = {});
std::shared_ptr<const Instance> make_instance(const std::string& kind_name,
                                              InstanceParams params = {});
std::optional<InstanceKind> kind_from_name(const std::string& s);

// --- element factories --------------------------------------------------

Element make_free(std::map<long long, long long> exps);
Element make_qplus(const Rat& v);
Element make_harmonic(std::map<long long, long long> multiset);
Element make_series(int vars, int prec, std::map<Mono, Rat> coeff, bool exact = true);
Element make_seq(InstanceKind kind, long long base, std::map<long long, long long> delta);
Element make_integer(long long v);

// chi_j for the sequence instances / basis vectors elsewhere
Element seq_chi(InstanceKind kind, long long j);
Element harmonic_e(long long i);

// Additive homomorphism phi of the harmonic instance: e0 -> 0, e_i -> 1/i.
Rat harmonic_phi(const Element& x);

// Least total degree with nonzero coefficient (see Instance::valuation).
long long series_valuation(const Element& x);

}  // namespace topmon
