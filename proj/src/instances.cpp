#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "topmon/instance.hpp"

namespace topmon {

namespace {

// Exponent vectors over `positions` slots with total degree 1..max_total, in
// graded-lex order (all vectors of total t before total t+1).
void for_each_vector(long long positions, long long max_total,
                     const std::function<void(const std::vector<long long>&)>& cb) {
  std::vector<long long> v(static_cast<size_t>(positions), 0);
  std::function<void(long long, long long)> rec = [&](long long pos, long long remaining) {
    if (pos == positions) {
      if (remaining == 0) cb(v);
      return;
    }
    for (long long e = 0; e <= remaining; ++e) {
      v[static_cast<size_t>(pos)] = e;
      rec(pos + 1, remaining - e);
    }
    v[static_cast<size_t>(pos)] = 0;
  };
  for (long long t = 1; t <= max_total; ++t) rec(0, t);
}

std::map<long long, long long> vector_to_map(const std::vector<long long>& v) {
  std::map<long long, long long> m;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) m[static_cast<long long>(i)] = v[i];
  return m;
}

// --- free commutative monoid -------------------------------------------------

class FreeInstance final : public Instance {
 public:
  explicit FreeInstance(InstanceParams p) : Instance(InstanceKind::Free, p) {
    if (p.generators < 1) throw std::invalid_argument("free monoid needs >= 1 generator");
  }

  TopologyStyle topology() const override { return TopologyStyle::Discrete; }
  Element identity() const override { return make_free({}); }

  Element combine(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    auto m = std::get<ExpVec>(a.p).e;
    for (auto& [i, v] : std::get<ExpVec>(b.p).e) m[i] += v;
    return make_free(std::move(m));
  }

  std::optional<Element> divides(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    auto m = std::get<ExpVec>(b.p).e;
    for (auto& [i, v] : std::get<ExpVec>(a.p).e) {
      auto it = m.find(i);
      if (it == m.end() || it->second < v) return std::nullopt;
      it->second -= v;
      if (it->second == 0) m.erase(it);
    }
    return make_free(std::move(m));
  }

  Element scale(const Element& x, long long n) const override {
    auto m = std::get<ExpVec>(x.p).e;
    for (auto& [_, v] : m) v *= n;
    return make_free(std::move(m));
  }

  bool in_carrier(const Element& x) const override {
    require_same_instance(x);
    return true;
  }

  std::vector<Element> window_elements(const SearchBound& b) const override {
    long long n = std::min(params_.generators, b.window);
    std::vector<Element> out;
    for_each_vector(n, b.degree,
                    [&](const std::vector<long long>& v) { out.push_back(make_free(vector_to_map(v))); });
    return out;
  }

  std::vector<Element> enumerate_divisors(const Element& x, const SearchBound&,
                                          bool* complete) const override {
    require_same_instance(x);
    if (complete) *complete = true;  // divisors are exactly the componentwise-smaller maps
    const auto& e = std::get<ExpVec>(x.p).e;
    std::vector<std::pair<long long, long long>> slots(e.begin(), e.end());
    std::vector<Element> out;
    std::map<long long, long long> cur;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == slots.size()) {
        out.push_back(make_free(cur));
        return;
      }
      for (long long v = 0; v <= slots[i].second; ++v) {
        if (v > 0) cur[slots[i].first] = v;
        rec(i + 1);
      }
      cur.erase(slots[i].first);
    };
    rec(0);
    return out;
  }

  std::vector<Element> atom_candidates(const SearchBound& b) const override {
    std::vector<Element> out;
    for (long long i = 0; i < std::min(params_.generators, b.window); ++i)
      out.push_back(make_free({{i, 1}}));
    return out;
  }

  AtomUniverse atom_universe(const SearchBound& b) const override {
    AtomUniverse u;
    for (long long i = 0; i < std::min(params_.generators, b.window); ++i)
      u.coord_atoms.push_back(make_free({{i, 1}}));
    u.coord_infinite = false;
    return u;
  }
};

// --- non-negative rationals under addition ------------------------------------

class QPlusInstance final : public Instance {
 public:
  explicit QPlusInstance(InstanceParams p) : Instance(InstanceKind::QPlus, p) {}

  TopologyStyle topology() const override { return TopologyStyle::ValueBall; }
  Element identity() const override { return make_qplus(0); }

  Element combine(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    return make_qplus(std::get<RatElem>(a.p).v + std::get<RatElem>(b.p).v);
  }

  std::optional<Element> divides(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    Rat d = std::get<RatElem>(b.p).v - std::get<RatElem>(a.p).v;
    if (d < 0) return std::nullopt;
    return make_qplus(d);
  }

  Element scale(const Element& x, long long n) const override {
    return make_qplus(std::get<RatElem>(x.p).v * n);
  }

  bool in_carrier(const Element& x) const override {
    require_same_instance(x);
    return true;
  }

  Rat value(const Element& x) const override {
    require_same_instance(x);
    return std::get<RatElem>(x.p).v;
  }

  std::vector<Element> window_elements(const SearchBound& b) const override {
    std::set<Rat> vals;
    for (long long q = 1; q <= 4; ++q)
      for (long long p = 1; p <= b.degree * q; ++p) vals.insert(Rat(p, q));
    std::vector<Element> out;
    for (const Rat& v : vals) out.push_back(make_qplus(v));
    return out;
  }

  std::vector<Element> enumerate_divisors(const Element& x, const SearchBound&,
                                          bool* complete) const override {
    require_same_instance(x);
    if (complete) *complete = false;  // every rational in [0, x] divides x
    const Rat v = std::get<RatElem>(x.p).v;
    std::vector<Element> out;
    if (v == 0) return out;
    std::set<Rat> vals{v / 2, v / 3, v / 4, v * 2 / 3, v * 3 / 4};
    for (const Rat& d : vals)
      if (d > 0 && d < v) out.push_back(make_qplus(d));
    return out;
  }

  std::vector<Element> atom_candidates(const SearchBound& b) const override {
    return window_elements(b);  // all reducible; enumerate_atoms ends up empty
  }
};

// --- free monoid on {e0, e1, ...} with the phi-pullback topology ---------------

class HarmonicInstance final : public Instance {
 public:
  explicit HarmonicInstance(InstanceParams p) : Instance(InstanceKind::Harmonic, p) {}

  TopologyStyle topology() const override { return TopologyStyle::ValueBall; }
  Element identity() const override { return make_harmonic({}); }

  Element combine(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    auto m = std::get<ExpVec>(a.p).e;
    for (auto& [i, v] : std::get<ExpVec>(b.p).e) m[i] += v;
    return make_harmonic(std::move(m));
  }

  std::optional<Element> divides(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    auto m = std::get<ExpVec>(b.p).e;
    for (auto& [i, v] : std::get<ExpVec>(a.p).e) {
      auto it = m.find(i);
      if (it == m.end() || it->second < v) return std::nullopt;
      it->second -= v;
      if (it->second == 0) m.erase(it);
    }
    return make_harmonic(std::move(m));
  }

  Element scale(const Element& x, long long n) const override {
    auto m = std::get<ExpVec>(x.p).e;
    for (auto& [_, v] : m) v *= n;
    return make_harmonic(std::move(m));
  }

  bool in_carrier(const Element& x) const override {
    require_same_instance(x);
    return true;
  }

  Rat value(const Element& x) const override {
    require_same_instance(x);
    return harmonic_phi(x);
  }

  std::vector<Element> window_elements(const SearchBound& b) const override {
    std::vector<Element> out;
    for_each_vector(b.window, b.degree, [&](const std::vector<long long>& v) {
      out.push_back(make_harmonic(vector_to_map(v)));
    });
    return out;
  }

  std::vector<Element> enumerate_divisors(const Element& x, const SearchBound&,
                                          bool* complete) const override {
    require_same_instance(x);
    if (complete) *complete = true;
    const auto& e = std::get<ExpVec>(x.p).e;
    std::vector<std::pair<long long, long long>> slots(e.begin(), e.end());
    std::vector<Element> out;
    std::map<long long, long long> cur;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == slots.size()) {
        out.push_back(make_harmonic(cur));
        return;
      }
      for (long long v = 0; v <= slots[i].second; ++v) {
        if (v > 0) cur[slots[i].first] = v;
        rec(i + 1);
      }
      cur.erase(slots[i].first);
    };
    rec(0);
    return out;
  }

  std::vector<Element> atom_candidates(const SearchBound& b) const override {
    std::vector<Element> out;
    for (long long i = 0; i < b.window; ++i) out.push_back(harmonic_e(i));
    return out;
  }

  AtomUniverse atom_universe(const SearchBound& b) const override {
    AtomUniverse u;
    for (long long i = 0; i < b.window; ++i) u.coord_atoms.push_back(harmonic_e(i));
    u.coord_infinite = true;
    return u;
  }
};

// --- truncated power series, m-adic ------------------------------------------

Mono zero_mono(int vars) { return Mono(static_cast<size_t>(vars), 0); }

class SeriesInstance final : public Instance {
 public:
  explicit SeriesInstance(InstanceParams p) : Instance(InstanceKind::Series, p) {
    if (p.vars < 1) throw std::invalid_argument("series instance needs >= 1 variable");
    if (p.precision < 1) throw std::invalid_argument("series precision must be >= 1");
  }

  TopologyStyle topology() const override { return TopologyStyle::DegreeAgreement; }

  Element identity() const override {
    return make_series(params_.vars, params_.precision, {{zero_mono(params_.vars), Rat(1)}});
  }

  void require_shape(const Element& x) const {
    require_same_instance(x);
    const auto& s = std::get<SeriesElem>(x.p);
    if (s.vars != params_.vars || s.prec != params_.precision)
      throw std::invalid_argument("series element with mismatched vars/precision");
  }

  Element combine(const Element& a, const Element& b) const override {
    require_shape(a);
    require_shape(b);
    const auto& x = std::get<SeriesElem>(a.p);
    const auto& y = std::get<SeriesElem>(b.p);
    std::map<Mono, Rat> out;
    bool dropped = false;
    for (auto& [ma, ca] : x.coeff)
      for (auto& [mb, cb] : y.coeff) {
        Mono m(ma);
        for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        if (mono_degree(m) >= params_.precision) {
          dropped = true;
          continue;
        }
        out[m] += ca * cb;
      }
    bool exact = x.exact && y.exact && !dropped;
    return make_series(params_.vars, params_.precision, std::move(out), exact);
  }

  std::optional<Element> divides(const Element& a, const Element& b) const override {
    require_shape(a);
    require_shape(b);
    if (a == identity()) return b;
    if (a == b) return identity();
    const auto& da = std::get<SeriesElem>(a.p);
    const auto& db = std::get<SeriesElem>(b.p);
    // truncated tables do not determine divisibility; only exact polynomials
    // below the precision can be decided
    if (!da.exact || !db.exact) return std::nullopt;
    if (da.coeff.empty() || db.coeff.empty()) return std::nullopt;
    auto quot = exact_division(db.coeff, da.coeff);
    if (!quot) return std::nullopt;
    Element c = make_series(params_.vars, params_.precision, std::move(*quot), true);
    if (!in_carrier(c)) return std::nullopt;
    return c;
  }

  bool in_carrier(const Element& x) const override {
    require_same_instance(x);
    const auto& s = std::get<SeriesElem>(x.p);
    if (x == identity()) return true;
    if (s.coeff.empty()) return false;  // zero, or vanishing below precision
    return s.coeff.find(zero_mono(s.vars)) == s.coeff.end();
  }

  long long valuation(const Element& x) const override {
    require_shape(x);
    return series_valuation(x);
  }

  std::vector<Element> window_elements(const SearchBound& b) const override {
    // small exact polynomials with valuation >= 1
    std::vector<Element> out;
    int n = params_.vars;
    auto var = [&](int i, int e) {
      Mono m = zero_mono(n);
      m[static_cast<size_t>(i)] = e;
      return m;
    };
    for (int i = 0; i < n; ++i) out.push_back(make_series(n, params_.precision, {{var(i, 1), Rat(1)}}));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Mono m = var(i, 1);
        m[static_cast<size_t>(j)] += 1;
        out.push_back(make_series(n, params_.precision, {{m, Rat(1)}}));
      }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        out.push_back(
            make_series(n, params_.precision, {{var(i, 1), Rat(1)}, {var(j, 1), Rat(1)}}));
    for (int i = 0; i < n && static_cast<long long>(out.size()) < b.max_candidates; ++i)
      out.push_back(
          make_series(n, params_.precision, {{var(i, 1), Rat(1)}, {var(i, 2), Rat(1)}}));
    return out;
  }

  std::vector<Element> enumerate_divisors(const Element& x, const SearchBound& b,
                                          bool* complete) const override {
    require_shape(x);
    if (complete) *complete = false;
    std::vector<Element> out;
    for (const Element& cand : window_elements(b)) {
      if (cand == x) continue;
      if (divides(cand, x)) out.push_back(cand);
    }
    return out;
  }

  std::vector<Element> atom_candidates(const SearchBound&) const override {
    std::vector<Element> out;
    for (int i = 0; i < params_.vars; ++i) {
      Mono m = zero_mono(params_.vars);
      m[static_cast<size_t>(i)] = 1;
      out.push_back(make_series(params_.vars, params_.precision, {{m, Rat(1)}}));
    }
    return out;
  }

  AtomUniverse atom_universe(const SearchBound& b) const override {
    AtomUniverse u;
    u.coord_atoms = atom_candidates(b);
    u.coord_infinite = false;
    return u;
  }

 private:
  // Exact multivariate polynomial division (lex order); nullopt when the
  // divisor does not divide exactly.
  static std::optional<std::map<Mono, Rat>> exact_division(std::map<Mono, Rat> rem,
                                                           const std::map<Mono, Rat>& div) {
    std::map<Mono, Rat> quot;
    const auto& [lm, lc] = *div.rbegin();
    while (!rem.empty()) {
      const auto& [rm, rc] = *rem.rbegin();
      Mono q(rm);
      for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] < lm[i]) return std::nullopt;
        q[i] -= lm[i];
      }
      Rat qc = rc / lc;
      quot[q] += qc;
      for (auto& [dm, dc] : div) {
        Mono m(dm);
        for (size_t i = 0; i < m.size(); ++i) m[i] += q[i];
        auto it = rem.find(m);
        Rat nv = (it == rem.end() ? Rat(0) : it->second) - qc * dc;
        if (nv == 0) {
          if (it != rem.end()) rem.erase(it);
        } else {
          rem[m] = nv;
        }
      }
    }
    return quot;
  }
};

// --- sequences: N^N pointwise, and the restricted submonoid -------------------

class SequenceInstance final : public Instance {
 public:
  SequenceInstance(InstanceKind kind, InstanceParams p) : Instance(kind, p) {
    if (p.window < 1) throw std::invalid_argument("sequence window must be >= 1");
  }

  TopologyStyle topology() const override { return TopologyStyle::PrefixAgreement; }
  Element identity() const override { return make_seq(kind_, 0, {}); }

  Element combine(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    const auto& x = std::get<SeqElem>(a.p);
    const auto& y = std::get<SeqElem>(b.p);
    auto delta = x.delta;
    for (auto& [i, d] : y.delta) delta[i] += d;
    return make_seq(kind_, x.base + y.base, std::move(delta));
  }

  std::optional<Element> divides(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    const auto& x = std::get<SeqElem>(a.p);
    const auto& y = std::get<SeqElem>(b.p);
    long long base = y.base - x.base;
    if (base < 0) return std::nullopt;
    auto delta = y.delta;
    for (auto& [i, d] : x.delta) delta[i] -= d;
    for (auto& [i, d] : delta)
      if (base + d < 0) return std::nullopt;
    Element c = make_seq(kind_, base, std::move(delta));
    if (!in_carrier(c)) return std::nullopt;
    return c;
  }

  Element scale(const Element& x, long long n) const override {
    const auto& s = std::get<SeqElem>(x.p);
    auto delta = s.delta;
    for (auto& [_, d] : delta) d *= n;
    return make_seq(kind_, s.base * n, std::move(delta));
  }

  bool in_carrier(const Element& x) const override {
    require_same_instance(x);
    if (kind_ == InstanceKind::Pointwise) return true;
    // restricted carrier: finitely supported, or >= 1 everywhere
    const auto& s = std::get<SeqElem>(x.p);
    return s.base == 0 || s.min_value() >= 1;
  }

  long long coordinate(const Element& x, long long i) const override {
    require_same_instance(x);
    return std::get<SeqElem>(x.p).value(i);
  }

  std::vector<Element> window_elements(const SearchBound& b) const override {
    // the span of the window atoms: c copies of the all-ones sequence plus a
    // non-negative finite delta on window coordinates, total weight <= degree
    std::vector<Element> out;
    long long base_cap = std::min<long long>(2, b.degree);
    for (long long c = 0; c <= base_cap; ++c) {
      long long rest = b.degree - c;
      if (c > 0) out.push_back(make_seq(kind_, c, {}));
      for_each_vector(b.window, rest, [&](const std::vector<long long>& v) {
        out.push_back(make_seq(kind_, c, vector_to_map(v)));
      });
    }
    return out;
  }

  std::vector<Element> enumerate_divisors(const Element& x, const SearchBound& b,
                                          bool* complete) const override {
    require_same_instance(x);
    const auto& s = std::get<SeqElem>(x.p);
    // coordinates where a divisor may deviate: the element's own support plus
    // the observation window
    std::set<long long> coords;
    for (auto& [i, _] : s.delta) coords.insert(i);
    for (long long i = 0; i < b.window; ++i) coords.insert(i);
    if (complete) *complete = (s.base == 0);  // window-scoped once a tail exists
    std::vector<long long> cs(coords.begin(), coords.end());
    std::vector<Element> out;
    long long examined = 0;
    for (long long base = 0; base <= s.base; ++base) {
      std::map<long long, long long> delta;
      std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
        if (++examined > b.max_candidates) return false;
        if (idx == cs.size()) {
          out.push_back(make_seq(kind_, base, delta));
          return true;
        }
        long long i = cs[idx];
        for (long long val = 0; val <= s.value(i); ++val) {
          if (val != base)
            delta[i] = val - base;
          else
            delta.erase(i);
          if (!rec(idx + 1)) return false;
        }
        delta.erase(i);
        return true;
      };
      if (!rec(0)) break;
    }
    std::vector<Element> carrier_out;
    for (auto& e : out)
      if (in_carrier(e)) carrier_out.push_back(e);
    return carrier_out;
  }

  std::vector<Element> atom_candidates(const SearchBound& b) const override {
    std::vector<Element> out;
    for (long long i = 0; i < b.window; ++i) out.push_back(seq_chi(kind_, i));
    if (kind_ == InstanceKind::Restricted) out.push_back(make_seq(kind_, 1, {}));
    return out;
  }

  AtomUniverse atom_universe(const SearchBound& b) const override {
    AtomUniverse u;
    for (long long i = 0; i < b.window; ++i) u.coord_atoms.push_back(seq_chi(kind_, i));
    u.coord_infinite = true;
    if (kind_ == InstanceKind::Restricted) u.special_atoms.push_back(make_seq(kind_, 1, {}));
    return u;
  }
};

// --- additive integers (demo only, non-reduced) --------------------------------

class IntegersInstance final : public Instance {
 public:
  explicit IntegersInstance(InstanceParams p) : Instance(InstanceKind::IntegersDemo, p) {}

  TopologyStyle topology() const override { return TopologyStyle::ValueBall; }
  Element identity() const override { return make_integer(0); }

  Element combine(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    return make_integer(std::get<IntElem>(a.p).v + std::get<IntElem>(b.p).v);
  }

  std::optional<Element> divides(const Element& a, const Element& b) const override {
    require_same_instance(a);
    require_same_instance(b);
    return make_integer(std::get<IntElem>(b.p).v - std::get<IntElem>(a.p).v);
  }

  Element scale(const Element& x, long long n) const override {
    return make_integer(std::get<IntElem>(x.p).v * n);
  }

  bool in_carrier(const Element& x) const override {
    require_same_instance(x);
    return true;
  }

  Rat value(const Element& x) const override {
    require_same_instance(x);
    return Rat(std::get<IntElem>(x.p).v);
  }

  std::vector<Element> window_elements(const SearchBound& b) const override {
    std::vector<Element> out;
    for (long long i = 1; i <= b.window; ++i) {
      out.push_back(make_integer(i));
      out.push_back(make_integer(-i));
    }
    return out;
  }

  std::vector<Element> enumerate_divisors(const Element& x, const SearchBound& b,
                                          bool* complete) const override {
    require_same_instance(x);
    if (complete) *complete = false;
    std::vector<Element> out;
    for (long long i = 1; i <= b.window; ++i) {
      out.push_back(make_integer(i));
      out.push_back(make_integer(-i));
    }
    return out;
  }
};

}  // namespace

std::shared_ptr<const Instance> make_instance(InstanceKind kind, InstanceParams params) {
  switch (kind) {
    case InstanceKind::Free: return std::make_shared<FreeInstance>(params);
    case InstanceKind::QPlus: return std::make_shared<QPlusInstance>(params);
    case InstanceKind::Harmonic: return std::make_shared<HarmonicInstance>(params);
    case InstanceKind::Series: return std::make_shared<SeriesInstance>(params);
    case InstanceKind::Pointwise:
      return std::make_shared<SequenceInstance>(InstanceKind::Pointwise, params);
    case InstanceKind::Restricted:
      return std::make_shared<SequenceInstance>(InstanceKind::Restricted, params);
    case InstanceKind::IntegersDemo: return std::make_shared<IntegersInstance>(params);
  }
  throw std::invalid_argument("unknown instance kind");
}

std::shared_ptr<const Instance> make_instance(const std::string& name, InstanceParams params) {
  auto k = kind_from_name(name);
  if (!k) throw std::invalid_argument("unknown instance kind: " + name);
  return make_instance(*k, params);
}

}  // namespace topmon
