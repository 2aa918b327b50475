#include "topmon/stream.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "topmon/factorisation.hpp"

namespace topmon {

bool IndexSelector::admits(long long k) const {
  switch (kind) {
    case Kind::All: return true;
    case Kind::Squares: {
      if (k < 0) return false;
      long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(k))));
      for (long long t = std::max<long long>(0, r - 2); t <= r + 2; ++t)
        if (t * t == k) return true;
      return false;
    }
    case Kind::Evens: return k % 2 == 0;
    case Kind::Odds: return k % 2 != 0;
    case Kind::Keep: return set.count(k) > 0;
    case Kind::Drop: return set.count(k) == 0;
  }
  return false;
}

FactorStream::FactorStream(InstanceKind kind, StreamRule rule, IndexSelector sel)
    : kind_(kind), rule_(std::move(rule)), sel_(std::move(sel)) {}

namespace {

Element coord_atom_extended(const Instance& ins, const AtomUniverse& u, long long i) {
  if (i < static_cast<long long>(u.coord_atoms.size())) return u.coord_atoms[static_cast<size_t>(i)];
  switch (ins.kind()) {
    case InstanceKind::Pointwise:
    case InstanceKind::Restricted:
      return seq_chi(ins.kind(), i);
    case InstanceKind::Harmonic:
      return harmonic_e(i);
    default:
      throw std::logic_error("coordinate atom beyond a finite family");
  }
}

// scan bound when hunting for `count` selected indices
long long scan_cap(long long count) {
  return std::max<long long>(1000, 4 * count * count + 256);
}

}  // namespace

std::vector<StreamTerm> FactorStream::enumerate(const Instance& ins, long long count) const {
  if (count < 0) throw std::invalid_argument("enumerate: negative count");
  std::vector<StreamTerm> out;
  auto push = [&](long long rule_index, Element f, long long mult) {
    if (ins.reduced() && ins.is_unit(f))
      throw std::invalid_argument("factor streams consist of non-units");
    out.push_back({static_cast<long long>(out.size()), rule_index, std::move(f), mult});
  };

  if (auto* ex = std::get_if<ExplicitRule>(&rule_)) {
    for (size_t j = 0; j < ex->factors.size() && static_cast<long long>(out.size()) < count; ++j) {
      long long idx = static_cast<long long>(j);
      if (!sel_.admits(idx)) continue;
      push(idx, ex->factors[j].first, ex->factors[j].second);
    }
    return out;
  }
  if (auto* g = std::get_if<GeometricRule>(&rule_)) {
    Rat term = g->scale;
    for (long long k = 1; k <= scan_cap(count) && static_cast<long long>(out.size()) < count; ++k) {
      term *= g->ratio;
      if (!sel_.admits(k)) continue;
      push(k, make_qplus(term), 1);
    }
    return out;
  }
  if (auto* il = std::get_if<InterleaveRule>(&rule_)) {
    const auto& parts = *il->parts;
    const long long S = static_cast<long long>(parts.size());
    std::vector<std::vector<StreamTerm>> pts;
    for (auto& part : parts) pts.push_back(part.enumerate(ins, count));
    bool grew = true;
    for (long long round = 0; grew && static_cast<long long>(out.size()) < count; ++round) {
      grew = false;
      for (long long s = 0; s < S && static_cast<long long>(out.size()) < count; ++s) {
        if (round < static_cast<long long>(pts[static_cast<size_t>(s)].size())) {
          const auto& t = pts[static_cast<size_t>(s)][static_cast<size_t>(round)];
          long long idx = round * S + s;
          if (sel_.admits(idx)) push(idx, t.factor, t.mult);
          grew = true;
        }
      }
    }
    return out;
  }
  if (auto* c = std::get_if<ChiFromRule>(&rule_)) {
    for (long long j = c->start; j < c->start + scan_cap(count) && static_cast<long long>(out.size()) < count;
         ++j) {
      if (!sel_.admits(j)) continue;
      push(j, seq_chi(kind_, j), 1);
    }
    return out;
  }
  if (auto* c = std::get_if<ConstantRule>(&rule_)) {
    for (long long k = 1; k <= scan_cap(count) && static_cast<long long>(out.size()) < count; ++k) {
      if (!sel_.admits(k)) continue;
      push(k, c->x, 1);
    }
    return out;
  }
  if (auto* h = std::get_if<HarmonicFromRule>(&rule_)) {
    for (long long n = h->start; n < h->start + scan_cap(count) && static_cast<long long>(out.size()) < count;
         ++n) {
      if (!sel_.admits(n)) continue;
      push(n, harmonic_e(n), 1);
    }
    return out;
  }
  if (auto* r = std::get_if<IntegersFromRule>(&rule_)) {
    for (long long k = r->start; k < r->start + scan_cap(count) && static_cast<long long>(out.size()) < count;
         ++k) {
      if (!sel_.admits(k)) continue;
      if (k == 0) continue;
      push(k, make_integer(k), 1);
    }
    return out;
  }
  if (std::get_if<IntegersPairedRule>(&rule_)) {
    for (long long k = 1; k <= scan_cap(count) && static_cast<long long>(out.size()) < count; ++k) {
      if (!sel_.admits(k)) continue;
      long long v = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
      push(k, make_integer(v), 1);
    }
    return out;
  }
  if (auto* a = std::get_if<AtomPowersRule>(&rule_)) {
    const ExponentMap& m = *a->map;
    AtomUniverse u = ins.atom_universe(a->bound);
    // specials first (negative rule indices), then coordinate atoms ascending
    for (auto& [s, v] : m.special_val) {
      if (static_cast<long long>(out.size()) >= count) return out;
      if (v == 0) continue;
      if (s < 0 || s >= static_cast<long long>(u.special_atoms.size()))
        throw std::invalid_argument("exponent map names an unknown special atom");
      if (!sel_.admits(-(s + 1))) continue;
      push(-(s + 1), u.special_atoms[static_cast<size_t>(s)], v);
    }
    if (m.base == 0) {
      for (auto& [i, off] : m.coord_off) {
        if (static_cast<long long>(out.size()) >= count) return out;
        long long v = m.coord_value(i);
        if (v == 0) continue;
        if (!sel_.admits(i)) continue;
        if (!u.coord_infinite && i >= static_cast<long long>(u.coord_atoms.size()))
          throw std::invalid_argument("exponent map exceeds the finite atom family");
        push(i, coord_atom_extended(ins, u, i), v);
      }
      return out;
    }
    long long horizon = u.coord_infinite ? scan_cap(count)
                                         : static_cast<long long>(u.coord_atoms.size());
    for (long long i = 0; i < horizon && static_cast<long long>(out.size()) < count; ++i) {
      long long v = m.coord_value(i);
      if (v <= 0) continue;
      if (!sel_.admits(i)) continue;
      push(i, coord_atom_extended(ins, u, i), v);
    }
    return out;
  }
  throw std::logic_error("unhandled stream rule");
}

bool FactorStream::finite_within(const Instance& ins, long long horizon) const {
  if (sel_.kind == IndexSelector::Kind::Keep)
    return static_cast<long long>(sel_.set.size()) <= horizon;
  if (auto* ex = std::get_if<ExplicitRule>(&rule_))
    return static_cast<long long>(ex->factors.size()) <= horizon ||
           static_cast<long long>(enumerate(ins, horizon + 1).size()) <= horizon;
  if (auto* a = std::get_if<AtomPowersRule>(&rule_)) {
    const ExponentMap& m = *a->map;
    AtomUniverse u = ins.atom_universe(a->bound);
    if (m.base == 0 || !u.coord_infinite)
      return static_cast<long long>(enumerate(ins, horizon + 1).size()) <= horizon;
    return false;
  }
  if (auto* il = std::get_if<InterleaveRule>(&rule_)) {
    long long total = 0;
    for (auto& part : *il->parts) {
      if (!part.finite_within(ins, horizon)) return false;
      total += static_cast<long long>(part.enumerate(ins, horizon + 1).size());
      if (total > horizon) return false;
    }
    return true;
  }
  return false;
}

std::optional<Rat> FactorStream::tail_value_bound(const Instance& ins, long long after) const {
  if (ins.topology() != TopologyStyle::ValueBall) return std::nullopt;
  if (sel_.kind == IndexSelector::Kind::Keep || std::get_if<ExplicitRule>(&rule_)) {
    // finite: sum the remaining terms exactly
    auto terms = enumerate(ins, after + 100000);
    Rat t = 0;
    for (size_t j = static_cast<size_t>(after); j < terms.size(); ++j)
      t += ins.value(terms[j].factor) * terms[j].mult;
    return t;
  }
  if (auto* g = std::get_if<GeometricRule>(&rule_)) {
    if (g->ratio >= 1 || g->ratio <= 0) return std::nullopt;
    auto terms = enumerate(ins, after);
    long long last_index = terms.empty() ? 0 : terms.back().rule_index;
    // scale * sum_{k > last_index} ratio^k, ignoring the selector: a valid
    // upper bound on the selected tail
    Rat r = g->ratio;
    Rat tail = g->scale;
    for (long long k = 0; k < last_index; ++k) tail *= r;
    return tail * r / (1 - r);  // scale * sum_{k > last_index} r^k
  }
  if (auto* il = std::get_if<InterleaveRule>(&rule_)) {
    auto head = enumerate(ins, after);
    std::map<const FactorStream*, long long> consumed;
    const auto& parts = *il->parts;
    const long long S = static_cast<long long>(parts.size());
    for (auto& t : head) consumed[&parts[static_cast<size_t>(((t.rule_index % S) + S) % S)]]++;
    Rat total = 0;
    for (auto& part : parts) {
      auto tb = part.tail_value_bound(ins, consumed[&part]);
      if (!tb) return std::nullopt;
      total += *tb;
    }
    return total;
  }
  if (auto* a = std::get_if<AtomPowersRule>(&rule_)) {
    const ExponentMap& m = *a->map;
    if (m.base == 0) {
      auto terms = enumerate(ins, after + 100000);
      Rat t = 0;
      for (size_t j = static_cast<size_t>(after); j < terms.size(); ++j)
        t += ins.value(terms[j].factor) * terms[j].mult;
      return t;
    }
    return std::nullopt;  // harmonic tail with a base is non-summable
  }
  return std::nullopt;
}

bool FactorStream::tail_nonsummable(const Instance& ins) const {
  if (sel_.kind == IndexSelector::Kind::Keep) return false;
  bool dense_selector = sel_.kind == IndexSelector::Kind::All ||
                        sel_.kind == IndexSelector::Kind::Drop ||
                        sel_.kind == IndexSelector::Kind::Evens ||
                        sel_.kind == IndexSelector::Kind::Odds;
  if (auto* c = std::get_if<ConstantRule>(&rule_)) {
    if (ins.topology() != TopologyStyle::ValueBall) return false;
    return dense_selector && rat_abs(ins.value(c->x)) > 0;
  }
  if (std::get_if<HarmonicFromRule>(&rule_)) return dense_selector;  // harmonic series
  if (std::get_if<IntegersFromRule>(&rule_))
    return dense_selector || sel_.kind == IndexSelector::Kind::Squares;
  if (std::get_if<IntegersPairedRule>(&rule_)) return dense_selector;  // |values| ramp
  if (auto* g = std::get_if<GeometricRule>(&rule_))
    return g->ratio >= 1 && sel_.kind != IndexSelector::Kind::Keep;
  if (auto* a = std::get_if<AtomPowersRule>(&rule_)) {
    if (ins.kind() != InstanceKind::Harmonic) return false;
    return a->map->base >= 1 && dense_selector;  // sum of base/i diverges
  }
  if (auto* il = std::get_if<InterleaveRule>(&rule_)) {
    for (auto& part : *il->parts)
      if (part.tail_nonsummable(ins)) return true;
    return false;
  }
  return false;
}

std::optional<long long> FactorStream::coordinate_total(const Instance& ins, long long i) const {
  if (ins.topology() != TopologyStyle::PrefixAgreement) return std::nullopt;
  if (auto* ex = std::get_if<ExplicitRule>(&rule_)) {
    long long t = 0;
    for (size_t j = 0; j < ex->factors.size(); ++j)
      if (sel_.admits(static_cast<long long>(j)))
        t += ins.coordinate(ex->factors[j].first, i) * ex->factors[j].second;
    return t;
  }
  if (auto* c = std::get_if<ChiFromRule>(&rule_))
    return (i >= c->start && sel_.admits(i)) ? 1 : 0;
  if (auto* c = std::get_if<ConstantRule>(&rule_)) {
    if (ins.coordinate(c->x, i) == 0) return 0;
    return std::nullopt;  // unbounded
  }
  if (auto* a = std::get_if<AtomPowersRule>(&rule_)) {
    const ExponentMap& m = *a->map;
    AtomUniverse u = ins.atom_universe(a->bound);
    long long t = 0;
    if (sel_.admits(i)) t += m.coord_value(i);
    for (auto& [s, v] : m.special_val) {
      if (!sel_.admits(-(s + 1)) || v == 0) continue;
      t += ins.coordinate(u.special_atoms[static_cast<size_t>(s)], i) * v;
    }
    return t;
  }
  if (auto* il = std::get_if<InterleaveRule>(&rule_)) {
    long long t = 0;
    for (auto& part : *il->parts) {
      auto c = part.coordinate_total(ins, i);
      if (!c) return std::nullopt;
      t += *c;
    }
    return t;
  }
  return std::nullopt;
}

std::optional<Element> FactorStream::pointwise_limit(const Instance& ins) const {
  if (ins.topology() != TopologyStyle::PrefixAgreement) return std::nullopt;
  if (auto* ex = std::get_if<ExplicitRule>(&rule_)) {
    Element acc = ins.identity();
    for (size_t j = 0; j < ex->factors.size(); ++j)
      if (sel_.admits(static_cast<long long>(j)))
        acc = ins.combine(acc, ins.power(ex->factors[j].first, ex->factors[j].second));
    return acc;
  }
  if (auto* c = std::get_if<ChiFromRule>(&rule_)) {
    // limit(i) = 1 iff i >= start and selected; encodable iff that set is
    // finite or cofinite
    if (sel_.kind == IndexSelector::Kind::Keep) {
      std::map<long long, long long> d;
      for (long long i : sel_.set)
        if (i >= c->start) d[i] = 1;
      return make_seq(kind_, 0, std::move(d));
    }
    if (sel_.kind == IndexSelector::Kind::All || sel_.kind == IndexSelector::Kind::Drop) {
      std::map<long long, long long> d;
      for (long long i = 0; i < c->start; ++i) d[i] = -1;
      if (sel_.kind == IndexSelector::Kind::Drop)
        for (long long i : sel_.set)
          if (i >= c->start) d[i] = -1;
      return make_seq(kind_, 1, std::move(d));
    }
    return std::nullopt;  // e.g. evens: not base+delta encodable
  }
  if (auto* a = std::get_if<AtomPowersRule>(&rule_)) {
    const ExponentMap& m = *a->map;
    AtomUniverse u = ins.atom_universe(a->bound);
    if (sel_.kind != IndexSelector::Kind::All) return std::nullopt;
    Element acc = make_seq(kind_, m.base, m.coord_off);
    for (auto& [s, v] : m.special_val)
      if (v > 0) acc = ins.combine(acc, ins.power(u.special_atoms[static_cast<size_t>(s)], v));
    return acc;
  }
  if (auto* il = std::get_if<InterleaveRule>(&rule_)) {
    if (sel_.kind != IndexSelector::Kind::All) return std::nullopt;
    Element acc = ins.identity();
    for (auto& part : *il->parts) {
      auto l = part.pointwise_limit(ins);
      if (!l) return std::nullopt;
      acc = ins.combine(acc, *l);
    }
    return acc;
  }
  return std::nullopt;
}

std::string FactorStream::describe() const {
  std::ostringstream os;
  if (std::get_if<ExplicitRule>(&rule_)) os << "explicit";
  else if (auto* g = std::get_if<GeometricRule>(&rule_)) os << "geometric(" << g->ratio << ")";
  else if (auto* c = std::get_if<ChiFromRule>(&rule_)) os << "chi-from(" << c->start << ")";
  else if (std::get_if<ConstantRule>(&rule_)) os << "constant";
  else if (auto* h = std::get_if<HarmonicFromRule>(&rule_)) os << "harmonic-from(" << h->start << ")";
  else if (auto* r = std::get_if<IntegersFromRule>(&rule_)) os << "integers-from(" << r->start << ")";
  else if (std::get_if<IntegersPairedRule>(&rule_)) os << "integers-paired";
  else if (std::get_if<AtomPowersRule>(&rule_)) os << "atom-powers";
  else if (auto* il = std::get_if<InterleaveRule>(&rule_))
    os << "interleave(" << il->parts->size() << " parts)";
  auto set_string = [&] {
    std::ostringstream ss;
    bool first = true;
    for (long long i : sel_.set) {
      if (!first) ss << ",";
      ss << i;
      first = false;
    }
    return ss.str();
  };
  switch (sel_.kind) {
    case IndexSelector::Kind::All: break;
    case IndexSelector::Kind::Squares: os << " | squares"; break;
    case IndexSelector::Kind::Evens: os << " | evens"; break;
    case IndexSelector::Kind::Odds: os << " | odds"; break;
    case IndexSelector::Kind::Keep: os << " | keep{" << set_string() << "}"; break;
    case IndexSelector::Kind::Drop: os << " | drop{" << set_string() << "}"; break;
  }
  return os.str();
}

FactorStream explicit_stream(InstanceKind kind,
                             std::vector<std::pair<Element, long long>> factors) {
  return FactorStream(kind, ExplicitRule{std::move(factors)});
}

FactorStream geometric_stream(const Rat& ratio) {
  return FactorStream(InstanceKind::QPlus, GeometricRule{ratio});
}

Element eval_partial(const Instance& ins, const std::vector<StreamTerm>& terms,
                     const std::vector<long long>& positions) {
  Element acc = ins.identity();
  for (long long p : positions) {
    if (p < 0 || p >= static_cast<long long>(terms.size()))
      throw std::invalid_argument("eval_partial: position outside the enumerated window");
    const StreamTerm& t = terms[static_cast<size_t>(p)];
    acc = ins.combine(acc, ins.power(t.factor, t.mult));
  }
  return acc;
}

Element eval_all(const Instance& ins, const std::vector<StreamTerm>& terms) {
  Element acc = ins.identity();
  for (const StreamTerm& t : terms) acc = ins.combine(acc, ins.power(t.factor, t.mult));
  return acc;
}

}  // namespace topmon
