#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "topmon/rational.hpp"

namespace topmon {

enum class InstanceKind {
  Free,         // free commutative monoid on n generators, discrete
  QPlus,        // non-negative rationals under addition, dyadic balls
  Harmonic,     // free monoid on {e0, e1, ...} with the phi-pullback topology
  Series,       // multiplicative {1} u {f != 0 : f(0) = 0} in Q[[x1..xn]], m-adic
  Pointwise,    // all of N^N under pointwise addition, prefix topology
  Restricted,   // functions N -> N finitely supported or >= 1 everywhere
  IntegersDemo  // additive integers; non-reduced, demo only
};

std::string kind_name(InstanceKind k);

// Finite exponent map index -> positive value. Shared by the free monoid
// (generator -> exponent) and the harmonic monoid (basis index -> multiplicity).
struct ExpVec {
  std::map<long long, long long> e;

  bool empty() const { return e.empty(); }
  long long at(long long i) const {
    auto it = e.find(i);
    return it == e.end() ? 0 : it->second;
  }
  long long total_degree() const {
    long long t = 0;
    for (auto& [_, v] : e) t += v;
    return t;
  }
  auto operator<=>(const ExpVec&) const = default;
};

struct RatElem {
  Rat v;
  bool operator==(const RatElem&) const = default;
};

// Monomial exponent tuple for the series instance; size == number of variables.
using Mono = std::vector<int>;
inline int mono_degree(const Mono& m) {
  int d = 0;
  for (int x : m) d += x;
  return d;
}

struct SeriesElem {
  int vars = 0;
  int prec = 0;                 // coefficients stored for total degree < prec
  std::map<Mono, Rat> coeff;    // no zero coefficients stored
  bool exact = true;            // false once truncation has discarded terms

  bool operator==(const SeriesElem&) const = default;
};

// Sequence N -> N encoded as a cofinite constant plus a finite perturbation:
// value(i) = base + delta(i), with delta omitting zeros and all values >= 0.
// base = 0 gives finitely supported sequences. The base is an arbitrary
// non-negative integer so that sums of >=1-everywhere elements stay encodable.
struct SeqElem {
  long long base = 0;
  std::map<long long, long long> delta;

  long long value(long long i) const {
    auto it = delta.find(i);
    return base + (it == delta.end() ? 0 : it->second);
  }
  long long min_value() const {
    long long m = base;
    for (auto& [_, d] : delta)
      if (base + d < m) m = base + d;
    return m;
  }
  bool operator==(const SeqElem&) const = default;
};

struct IntElem {
  long long v = 0;
  bool operator==(const IntElem&) const = default;
};

using Payload = std::variant<ExpVec, RatElem, SeriesElem, SeqElem, IntElem>;

// Immutable canonical value of a monoid element. Canonicalization happens at
// construction; equality is structural.
struct Element {
  InstanceKind kind = InstanceKind::Free;
  Payload p;

  bool operator==(const Element&) const = default;
};

// Strict total order used for deterministic multisets and report ordering.
bool element_less(const Element& a, const Element& b);

struct ElementLess {
  bool operator()(const Element& a, const Element& b) const { return element_less(a, b); }
};

}  // namespace topmon
