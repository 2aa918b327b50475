#include "topmon/monoid_ops.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace topmon {

namespace {

// Weight driving the product-degree prune of the bounded searches; matches
// the enumeration weight of window_elements.
long long search_weight(const Instance& ins, const Element& x) {
  switch (ins.kind()) {
    case InstanceKind::Free:
    case InstanceKind::Harmonic:
      return std::get<ExpVec>(x.p).total_degree();
    case InstanceKind::Pointwise:
    case InstanceKind::Restricted: {
      const auto& s = std::get<SeqElem>(x.p);
      long long w = s.base;
      for (auto& [_, d] : s.delta) w += d > 0 ? d : -d;
      return std::max<long long>(w, 1);
    }
    case InstanceKind::Series:
      return std::max<long long>(ins.valuation(x), 1);
    default:
      return 1;
  }
}

void require_non_unit_input(const Instance& ins, const Element& x) {
  ins.require_same_instance(x);
  if (ins.is_unit(x)) throw std::invalid_argument("unit has no irreducibility status");
}

}  // namespace

BoundedVerdict is_irreducible(const Instance& ins, const Element& x, const SearchBound& bound) {
  require_non_unit_input(ins, x);
  BoundedVerdict v;
  v.bound = bound;
  bool complete = false;
  for (const Element& a : ins.enumerate_divisors(x, bound, &complete)) {
    if (ins.is_unit(a)) continue;
    auto c = ins.divides(a, x);
    if (!c || ins.is_unit(*c)) continue;
    v.status = VerdictStatus::No;
    v.witness = {a, *c};
    v.note = "2-factor split found";
    return v;
  }
  v.status = VerdictStatus::Yes;
  v.note = complete ? "divisor enumeration complete" : "no split within window";
  return v;
}

BoundedVerdict is_prime_bounded(const Instance& ins, const Element& x, int max_factors,
                                const SearchBound& bound) {
  require_non_unit_input(ins, x);
  if (max_factors < 1) throw std::invalid_argument("max_factors must be >= 1");
  BoundedVerdict v;
  v.bound = bound;

  // a witness product has no factor divisible by x, so only such factors
  // need enumerating
  std::vector<Element> pool;
  std::vector<long long> weight;
  for (const Element& g : ins.window_elements(bound)) {
    if (ins.is_unit(g)) continue;
    if (ins.divides(x, g)) continue;
    pool.push_back(g);
    weight.push_back(search_weight(ins, g));
  }

  long long examined = 0;
  bool capped = false;
  std::vector<size_t> tuple;
  std::function<bool(size_t, long long, const Element&)> rec =
      [&](size_t from, long long budget, const Element& prod) -> bool {
    if (tuple.size() >= 2 && ins.divides(x, prod)) {
      v.status = VerdictStatus::No;
      for (size_t i : tuple) v.witness.push_back(pool[i]);
      v.note = "witness product has no factor divisible by the element";
      return true;
    }
    if (tuple.size() == static_cast<size_t>(max_factors)) return false;
    for (size_t i = from; i < pool.size(); ++i) {
      if (weight[i] > budget) continue;
      if (++examined > bound.max_candidates) {
        capped = true;
        return false;
      }
      tuple.push_back(i);
      bool found = rec(i, budget - weight[i], ins.combine(prod, pool[i]));
      tuple.pop_back();
      if (found || capped) return found;
    }
    return false;
  };
  if (rec(0, bound.degree, ins.identity())) return v;

  v.status = capped ? VerdictStatus::Unknown : VerdictStatus::Yes;
  v.note = capped ? "enumeration cap exceeded" : "no witness within bounds";
  return v;
}

std::vector<Element> enumerate_atoms(const Instance& ins, const SearchBound& bound) {
  std::vector<Element> atom_probes = ins.atom_candidates(bound);
  std::vector<Element> atoms;
  for (const Element& x : ins.window_elements(bound)) {
    if (ins.is_unit(x)) continue;
    // cheap reducibility probe by the likely small divisors
    bool reducible = false;
    for (const Element& a : atom_probes) {
      if (a == x || ins.is_unit(a)) continue;
      auto c = ins.divides(a, x);
      if (c && !ins.is_unit(*c)) {
        reducible = true;
        break;
      }
    }
    if (reducible) continue;
    if (is_irreducible(ins, x, bound).yes()) atoms.push_back(x);
  }
  std::sort(atoms.begin(), atoms.end(), ElementLess{});
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

}  // namespace topmon
