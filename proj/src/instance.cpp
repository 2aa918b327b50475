#include "topmon/instance.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace topmon {

std::string status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Yes: return "Yes";
    case VerdictStatus::No: return "No";
    case VerdictStatus::Unknown: return "Unknown";
  }
  return "?";
}

Element Instance::power(const Element& x, long long n) const {
  require_same_instance(x);
  if (n < 0) throw std::invalid_argument("power: negative exponent");
  if (n == 0) return identity();
  return scale(x, n);
}

Element Instance::scale(const Element& x, long long n) const {
  // generic n-fold combine by binary splitting; payload-specific overrides
  // do exponent arithmetic directly
  Element acc = identity();
  Element base = x;
  long long m = n;
  while (m > 0) {
    if (m & 1) acc = combine(acc, base);
    m >>= 1;
    if (m) base = combine(base, base);
  }
  return acc;
}

bool Instance::is_unit(const Element& x) const {
  require_same_instance(x);
  if (kind_ == InstanceKind::IntegersDemo) return true;  // a group: everything invertible
  return x == identity();
}

Rat Instance::value(const Element&) const {
  throw std::logic_error(name() + ": value() not defined for this topology");
}

long long Instance::valuation(const Element&) const {
  throw std::logic_error(name() + ": valuation() only defined for the series instance");
}

long long Instance::coordinate(const Element&, long long) const {
  throw std::logic_error(name() + ": coordinate() only defined for sequence instances");
}

std::vector<Element> Instance::atom_candidates(const SearchBound& b) const {
  return window_elements(b);
}

AtomUniverse Instance::atom_universe(const SearchBound&) const {
  return {};
}

void Instance::require_same_instance(const Element& x) const {
  if (x.kind != kind_)
    throw std::invalid_argument("mixed-instance arguments rejected: element of " +
                                kind_name(x.kind) + " passed to " + name());
}

bool Instance::neighborhood_contains(const Element& center, long long level,
                                     const Element& x) const {
  require_same_instance(center);
  require_same_instance(x);
  if (level < 0) throw std::invalid_argument("neighborhood level must be >= 0");
  switch (topology()) {
    case TopologyStyle::Discrete:
      return x == center;
    case TopologyStyle::ValueBall:
      return within_dyadic(value(x), value(center), level);
    case TopologyStyle::PrefixAgreement: {
      for (long long i = 0; i < level; ++i)
        if (coordinate(x, i) != coordinate(center, i)) return false;
      return true;
    }
    case TopologyStyle::DegreeAgreement: {
      const auto& a = std::get<SeriesElem>(x.p);
      const auto& c = std::get<SeriesElem>(center.p);
      if (a.vars != c.vars || a.prec != c.prec)
        throw std::invalid_argument("series elements with mismatched shape");
      long long t = std::min<long long>(level, a.prec);
      auto below = [&](const SeriesElem& s) {
        std::map<Mono, Rat> out;
        for (auto& [m, q] : s.coeff)
          if (mono_degree(m) < t) out.emplace(m, q);
        return out;
      };
      return below(a) == below(c);
    }
  }
  return false;
}

std::optional<InstanceKind> kind_from_name(const std::string& s) {
  if (s == "free") return InstanceKind::Free;
  if (s == "qplus") return InstanceKind::QPlus;
  if (s == "harmonic") return InstanceKind::Harmonic;
  if (s == "series") return InstanceKind::Series;
  if (s == "pointwise") return InstanceKind::Pointwise;
  if (s == "restricted") return InstanceKind::Restricted;
  if (s == "integers-demo" || s == "integers") return InstanceKind::IntegersDemo;
  return std::nullopt;
}

// --- element factories -------------------------------------------------------

Element make_free(std::map<long long, long long> exps) {
  for (auto it = exps.begin(); it != exps.end();) {
    if (it->second == 0) {
      it = exps.erase(it);
      continue;
    }
    if (it->second < 0 || it->first < 0)
      throw std::invalid_argument("free element: exponents must be positive, indices >= 0");
    ++it;
  }
  return Element{InstanceKind::Free, ExpVec{std::move(exps)}};
}

Element make_qplus(const Rat& v) {
  if (v < 0) throw std::invalid_argument("qplus element must be >= 0");
  return Element{InstanceKind::QPlus, RatElem{v}};
}

Element make_harmonic(std::map<long long, long long> m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second == 0) {
      it = m.erase(it);
      continue;
    }
    if (it->second < 0 || it->first < 0)
      throw std::invalid_argument("harmonic element: multiplicities must be positive");
    ++it;
  }
  return Element{InstanceKind::Harmonic, ExpVec{std::move(m)}};
}

Element make_series(int vars, int prec, std::map<Mono, Rat> coeff, bool exact) {
  if (vars < 1 || prec < 1) throw std::invalid_argument("series: vars and precision must be >= 1");
  for (auto it = coeff.begin(); it != coeff.end();) {
    if (static_cast<int>(it->first.size()) != vars)
      throw std::invalid_argument("series monomial arity mismatch");
    for (int e : it->first)
      if (e < 0) throw std::invalid_argument("series monomial with negative exponent");
    if (mono_degree(it->first) >= prec || it->second == 0)
      it = coeff.erase(it);
    else
      ++it;
  }
  return Element{InstanceKind::Series, SeriesElem{vars, prec, std::move(coeff), exact}};
}

Element make_seq(InstanceKind kind, long long base, std::map<long long, long long> delta) {
  if (kind != InstanceKind::Pointwise && kind != InstanceKind::Restricted)
    throw std::invalid_argument("make_seq: sequence instances only");
  if (base < 0) throw std::invalid_argument("sequence base must be >= 0");
  for (auto it = delta.begin(); it != delta.end();) {
    if (it->first < 0) throw std::invalid_argument("sequence coordinate must be >= 0");
    if (base + it->second < 0)
      throw std::invalid_argument("sequence value must be >= 0 at every coordinate");
    if (it->second == 0)
      it = delta.erase(it);
    else
      ++it;
  }
  return Element{kind, SeqElem{base, std::move(delta)}};
}

Element make_integer(long long v) { return Element{InstanceKind::IntegersDemo, IntElem{v}}; }

Element seq_chi(InstanceKind kind, long long j) { return make_seq(kind, 0, {{j, 1}}); }

Element harmonic_e(long long i) { return make_harmonic({{i, 1}}); }

Rat harmonic_phi(const Element& x) {
  if (x.kind != InstanceKind::Harmonic)
    throw std::invalid_argument("harmonic_phi: harmonic element expected");
  const auto& m = std::get<ExpVec>(x.p).e;
  Rat s = 0;
  for (auto& [i, mult] : m) {
    if (i == 0) continue;  // e0 -> 0
    s += Rat(mult, i);
  }
  return s;
}

long long series_valuation(const Element& x) {
  if (x.kind != InstanceKind::Series)
    throw std::invalid_argument("series_valuation: series element expected");
  const auto& s = std::get<SeriesElem>(x.p);
  long long v = s.prec;  // "no nonzero coefficient below precision" marker
  for (auto& [m, q] : s.coeff) v = std::min<long long>(v, mono_degree(m));
  return v;
}

}  // namespace topmon
