#include "topmon/convergence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "topmon/rng.hpp"

namespace topmon {

std::string conv_status_name(ConvStatus s) {
  switch (s) {
    case ConvStatus::ConvergedAt: return "ConvergedAt";
    case ConvStatus::DivergedWith: return "DivergedWith";
    case ConvStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string check_verdict_name(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Pass: return "PASS";
    case CheckVerdict::Fail: return "FAIL";
    case CheckVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

bool neighborhood_contains(const Instance& ins, const Element& center, long long level,
                           const Element& x) {
  return ins.neighborhood_contains(center, level, x);
}

namespace {

long long extended_horizon(const VerifyParams& p, long long depth) {
  return std::min(p.extend_cap, std::max(depth + 64, p.extend_factor * depth));
}

Rat term_value(const Instance& ins, const StreamTerm& t) {
  return ins.value(t.factor) * t.mult;
}

// --- certification ----------------------------------------------------------

// Spot-check a structural certificate by sampling supersets of the core and
// re-testing ball membership directly.
bool spotcheck(const Instance& ins, const std::vector<StreamTerm>& terms,
               const std::vector<long long>& core, const Element& candidate, long long level,
               const VerifyParams& p, int rounds = 32) {
  Rng rng(p.seed ^ 0x5eed5eedULL);
  std::vector<long long> rest;
  for (const auto& t : terms)
    if (std::find(core.begin(), core.end(), t.position) == core.end()) rest.push_back(t.position);
  for (int r = 0; r < rounds; ++r) {
    std::vector<long long> T = core;
    for (long long j : rest)
      if (rng.coin()) T.push_back(j);
    if (!ins.neighborhood_contains(candidate, level, eval_partial(ins, terms, T))) return false;
  }
  return true;
}

// `terms` holds the first `depth` indices (core candidates); `ext` extends the
// enumeration so that certificates for infinite streams are also checked
// against continuations beyond the depth window.
std::optional<Certificate> certify(const Instance& ins, const std::vector<StreamTerm>& terms,
                                   const std::vector<StreamTerm>& ext, bool exhausted,
                                   const Element& candidate, long long level, long long depth,
                                   const VerifyParams& p) {
  const long long m = static_cast<long long>(terms.size());
  const long long me = static_cast<long long>(ext.size());

  // finite stream fully inside the depth: the core is the whole index set and
  // the only extension is the core itself
  if (exhausted) {
    Element prod = eval_all(ins, terms);
    if (ins.neighborhood_contains(candidate, level, prod)) {
      std::vector<long long> all(static_cast<size_t>(m));
      for (long long i = 0; i < m; ++i) all[static_cast<size_t>(i)] = i;
      return Certificate{all, level, depth, "finite-full-product"};
    }
    return std::nullopt;
  }

  switch (ins.topology()) {
    case TopologyStyle::Discrete:
      return std::nullopt;  // an infinite stream of non-units never stabilizes

    case TopologyStyle::ValueBall: {
      bool nonneg = true;
      for (auto& t : ext)
        if (ins.value(t.factor) < 0) nonneg = false;
      if (!nonneg) break;  // sampled fallback
      // partial sums are monotone along set inclusion, so membership of all
      // supersets of a prefix reduces to the two endpoints
      const Rat V = ins.value(candidate);
      Rat total = 0;
      for (auto& t : ext) total += term_value(ins, t);
      if (!within_dyadic(total, V, level)) return std::nullopt;
      Rat s = 0;
      long long cut = -1;
      if (within_dyadic(s, V, level)) cut = 0;
      for (long long i = 0; i < m && cut < 0; ++i) {
        s += term_value(ins, terms[static_cast<size_t>(i)]);
        if (within_dyadic(s, V, level)) cut = i + 1;
      }
      if (cut < 0) return std::nullopt;
      std::vector<long long> core;
      for (long long i = 0; i < cut; ++i) core.push_back(i);
      Certificate c{core, level, depth, "monotone"};
      if (!spotcheck(ins, ext, core, candidate, level, p)) return std::nullopt;
      c.path += "+spotcheck";
      return c;
    }

    case TopologyStyle::PrefixAgreement: {
      // extensions must not touch coordinates below the level, so the core is
      // every position that does; a beyond-depth term touching them defeats
      // any within-depth core
      std::vector<long long> core;
      for (auto& t : ext) {
        bool touches = false;
        for (long long i = 0; i < level && !touches; ++i)
          if (ins.coordinate(t.factor, i) != 0) touches = true;
        if (!touches) continue;
        if (t.position >= m) return std::nullopt;
        core.push_back(t.position);
      }
      Element part = eval_partial(ins, terms, core);
      for (long long i = 0; i < level; ++i)
        if (ins.coordinate(part, i) != ins.coordinate(candidate, i)) return std::nullopt;
      Certificate c{core, level, depth, "coordinate"};
      if (!spotcheck(ins, ext, core, candidate, level, p)) return std::nullopt;
      c.path += "+spotcheck";
      return c;
    }

    case TopologyStyle::DegreeAgreement: {
      long long t = std::min<long long>(level, ins.params().precision);
      // partial products over >= t non-unit factors vanish below degree t
      if (ins.valuation(candidate) < t) return std::nullopt;
      if (m < t) return std::nullopt;
      std::vector<long long> core;
      for (long long i = 0; i < t; ++i) core.push_back(i);
      Certificate c{core, level, depth, "valuation"};
      if (!spotcheck(ins, ext, core, candidate, level, p)) return std::nullopt;
      c.path += "+spotcheck";
      return c;
    }
  }

  // generic fallback: smallest prefix core whose extensions (within the
  // extended window), checked exhaustively when feasible and by seeded
  // sampling otherwise, stay in the ball
  for (long long cut = 0; cut <= m; ++cut) {
    std::vector<long long> core;
    for (long long i = 0; i < cut; ++i) core.push_back(i);
    std::vector<long long> rest;
    for (long long i = cut; i < me; ++i) rest.push_back(i);
    bool ok = true;
    std::string path;
    if (rest.size() <= 12) {
      path = "exhaustive-extensions";
      for (std::uint64_t mask = 0; ok && mask < (1ULL << rest.size()); ++mask) {
        std::vector<long long> T = core;
        for (size_t b = 0; b < rest.size(); ++b)
          if (mask & (1ULL << b)) T.push_back(rest[b]);
        ok = ins.neighborhood_contains(candidate, level, eval_partial(ins, ext, T));
      }
    } else {
      path = "sampled-extensions";
      Rng rng(p.seed ^ (0xc0ffeeULL + static_cast<std::uint64_t>(cut)));
      ok = ins.neighborhood_contains(candidate, level, eval_partial(ins, ext, core));
      for (int r = 0; ok && r < p.samples; ++r) {
        std::vector<long long> T = core;
        for (long long j : rest)
          if (rng.coin()) T.push_back(j);
        ok = ins.neighborhood_contains(candidate, level, eval_partial(ins, ext, T));
      }
      std::vector<long long> full = core;
      full.insert(full.end(), rest.begin(), rest.end());
      ok = ok && ins.neighborhood_contains(candidate, level, eval_partial(ins, ext, full));
    }
    if (ok) return Certificate{core, level, depth, path};
  }
  return std::nullopt;
}

// --- candidate exclusion -----------------------------------------------------

struct Exclusion {
  long long level = 0;  // escaped at this level (<= requested level)
  std::string detail;
};

std::optional<Exclusion> candidate_escape(const Instance& ins, const FactorStream& stream,
                                          const std::vector<StreamTerm>& terms, bool exhausted,
                                          const Element& candidate, long long level,
                                          const VerifyParams& p) {
  const long long E = extended_horizon(p, std::max<long long>(terms.size(), 1));
  switch (ins.topology()) {
    case TopologyStyle::Discrete: {
      if (exhausted) {
        if (eval_all(ins, terms) != candidate)
          return Exclusion{level, "full product differs from the candidate"};
        return std::nullopt;
      }
      return Exclusion{level,
                       "every core extends by a further non-unit factor, changing the product"};
    }
    case TopologyStyle::ValueBall: {
      auto ext = stream.enumerate(ins, E);
      bool nonneg = true;
      for (auto& t : ext)
        if (ins.value(t.factor) < 0) nonneg = false;
      if (!nonneg) {
        // one-step escape: a single factor jump at least the ball diameter
        for (auto& t : ext) {
          Rat jump = rat_abs(term_value(ins, t));
          if (jump >= 2 * dyadic(level)) {
            std::ostringstream os;
            os << "one-step escape: adding rule index " << t.rule_index << " moves the sum by "
               << rat_to_string(jump) << " >= ball diameter";
            return Exclusion{level, os.str()};
          }
        }
        return std::nullopt;
      }
      const Rat V = ins.value(candidate);
      Rat s = 0;
      for (size_t i = 0; i < ext.size(); ++i) {
        s += term_value(ins, ext[i]);
        if (s >= V + dyadic(level)) {
          std::ostringstream os;
          os << "overshoot: the first " << (i + 1) << " terms sum to " << rat_to_string(s)
             << " >= candidate + 2^-" << level;
          return Exclusion{level, os.str()};
        }
      }
      std::optional<Rat> tail;
      if (stream.finite_within(ins, E))
        tail = Rat(0);  // ext covers the whole stream
      else
        tail = stream.tail_value_bound(ins, static_cast<long long>(ext.size()));
      if (tail && s + *tail <= V - dyadic(level)) {
        std::ostringstream os;
        os << "undershoot: all partial sums stay <= " << rat_to_string(s + *tail)
           << " <= candidate - 2^-" << level;
        return Exclusion{level, os.str()};
      }
      return std::nullopt;
    }
    case TopologyStyle::PrefixAgreement: {
      auto ext = stream.enumerate(ins, E);
      for (long long i = 0; i < level; ++i) {
        long long ci = ins.coordinate(candidate, i);
        long long within = 0;
        for (auto& t : ext) within += ins.coordinate(t.factor, i) * t.mult;
        if (within > ci) {
          std::ostringstream os;
          os << "coordinate " << i << " overshoots: partial sums reach " << within << " > "
             << ci;
          return Exclusion{i + 1, os.str()};
        }
        auto total = stream.coordinate_total(ins, i);
        if (exhausted) total = within;
        if (total && *total < ci) {
          std::ostringstream os;
          os << "coordinate " << i << " undershoots: whole-stream total " << *total << " < "
             << ci;
          return Exclusion{i + 1, os.str()};
        }
      }
      return std::nullopt;
    }
    case TopologyStyle::DegreeAgreement: {
      long long t = std::min<long long>(level, ins.params().precision);
      long long v = ins.valuation(candidate);
      if (v >= t) return std::nullopt;
      auto ext = stream.enumerate(ins, std::max<long long>(v + 1, 1));
      if (static_cast<long long>(ext.size()) >= v + 1) {
        std::ostringstream os;
        os << "valuation escape: products of " << (v + 1)
           << " non-unit factors vanish below degree " << (v + 1)
           << " while the candidate does not";
        return Exclusion{v + 1, os.str()};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

// --- divergence --------------------------------------------------------------

std::optional<DivergenceWitness> detect_divergence(const Instance& ins,
                                                   const FactorStream& stream,
                                                   const VerifyParams& p) {
  const long long E = extended_horizon(p, p.depth);
  if (stream.finite_within(ins, E)) return std::nullopt;  // finite products always converge
  auto ext = stream.enumerate(ins, E);

  switch (ins.topology()) {
    case TopologyStyle::Discrete:
      return DivergenceWitness{
          "discrete-not-stationary",
          "infinitely many non-unit factors: by cancellativity each further factor changes "
          "the partial product, so the net is never eventually constant",
          std::nullopt};

    case TopologyStyle::ValueBall: {
      bool nonneg = true;
      for (auto& t : ext)
        if (ins.value(t.factor) < 0) nonneg = false;
      if (stream.tail_nonsummable(ins)) {
        Rat s = 0;
        for (auto& t : ext) s += rat_abs(term_value(ins, t));
        std::ostringstream os;
        os << "partial sums unbounded: |values| over the first " << ext.size()
           << " terms already sum to " << rat_to_string(s)
           << " and the tail is non-summable; for every candidate c some finite subset "
              "exceeds c + 1, and extensions of any core contain such subsets";
        if (!nonneg) {
          // demonstrate with the sign-homogeneous subchain
          Rat pos = 0;
          for (auto& t : ext)
            if (term_value(ins, t) > 0) pos += term_value(ins, t);
          os << " (positive-factor subchain reaches " << rat_to_string(pos) << ")";
        }
        return DivergenceWitness{"partial-sums-unbounded", os.str(), std::nullopt};
      }
      if (!nonneg) {
        // mixed signs without a summability certificate: growing one-step jumps
        Rat biggest = 0;
        long long at = 0;
        for (auto& t : ext)
          if (rat_abs(term_value(ins, t)) > biggest) {
            biggest = rat_abs(term_value(ins, t));
            at = t.rule_index;
          }
        if (biggest >= 1) {
          std::ostringstream os;
          os << "one-step escape: factor at rule index " << at << " moves any partial sum by "
             << rat_to_string(biggest)
             << "; no ball of radius < 1/2 can contain both sides, beyond every core";
          return DivergenceWitness{"one-step-escape", os.str(), std::nullopt};
        }
      }
      if (ins.kind() == InstanceKind::QPlus && p.enable_qsweep) {
        SweepResult sw = qplus_denominator_sweep(ins, stream, p.qmax, p.sweep_level_cap, p.depth);
        if (sw.all_excluded)
          return DivergenceWitness{"denominator-sweep", sw.detail, std::nullopt};
      }
      return std::nullopt;
    }

    case TopologyStyle::PrefixAgreement: {
      // coordinate with unbounded multiplicity
      std::map<long long, long long> within;
      for (auto& t : ext)
        for (long long i = 0; i < p.level + 8; ++i)
          if (long long c = ins.coordinate(t.factor, i); c != 0) within[i] += c * t.mult;
      for (auto& [i, tot] : within) {
        auto whole = stream.coordinate_total(ins, i);
        if (!whole && tot > 0) {
          std::ostringstream os;
          os << "coordinate " << i
             << " receives unbounded multiplicity; powers of a non-identity value escape "
                "every fixed candidate coordinate";
          return DivergenceWitness{"coordinate-unbounded", os.str(), std::nullopt};
        }
        if (tot > p.mult_cap) {
          std::ostringstream os;
          os << "coordinate " << i << " exceeds the multiplicity cap " << p.mult_cap;
          return DivergenceWitness{"coordinate-unbounded", os.str(), std::nullopt};
        }
      }
      auto limit = stream.pointwise_limit(ins);
      if (limit && !ins.in_carrier(*limit)) {
        std::ostringstream os;
        os << "pointwise limit exists but lies outside the carrier";
        return DivergenceWitness{"limit-outside-carrier", os.str(), limit};
      }
      return std::nullopt;
    }

    case TopologyStyle::DegreeAgreement:
      return DivergenceWitness{
          "valuation-escape",
          "infinitely many non-unit factors: partial products over m factors have valuation "
          ">= m, so they leave every m-adic ball around any fixed candidate; the m-adic "
          "limit vanishes below every degree and is not in the carrier",
          std::nullopt};
  }
  return std::nullopt;
}

ConvergenceReport verify_convergence(const Instance& ins, const FactorStream& stream,
                                     const Element& candidate, long long level, long long depth,
                                     const VerifyParams& p) {
  ins.require_same_instance(candidate);
  if (depth < 1) throw std::invalid_argument("verify_convergence: depth must be >= 1");
  ConvergenceReport rep;
  auto terms = stream.enumerate(ins, depth);
  bool exhausted = stream.finite_within(ins, depth);
  auto ext = exhausted ? terms : stream.enumerate(ins, extended_horizon(p, depth));

  if (auto cert = certify(ins, terms, ext, exhausted, candidate, level, depth, p)) {
    rep.status = ConvStatus::ConvergedAt;
    rep.certificate = std::move(*cert);
    return rep;
  }
  if (auto div = detect_divergence(ins, stream, p)) {
    rep.status = ConvStatus::DivergedWith;
    rep.witness = std::move(*div);
    return rep;
  }
  if (auto esc = candidate_escape(ins, stream, terms, exhausted, candidate, level, p)) {
    rep.status = ConvStatus::Inconclusive;
    rep.witness = DivergenceWitness{"candidate-excluded", esc->detail, std::nullopt};
    std::ostringstream os;
    os << "candidate excluded at level " << esc->level;
    rep.note = os.str();
    return rep;
  }
  rep.status = ConvStatus::Inconclusive;
  std::ostringstream os;
  os << "no certificate and no refutation within depth " << depth;
  rep.note = os.str();
  return rep;
}

bool powers_diverge(const Instance& ins, const Element& x, long long n_max, long long level,
                    const VerifyParams& p) {
  ins.require_same_instance(x);
  if (x == ins.identity())
    throw std::invalid_argument("powers_diverge requires a non-identity element");
  (void)level;
  FactorStream s(ins.kind(), ConstantRule{x});
  VerifyParams q = p;
  q.depth = n_max;
  q.extend_cap = std::max<long long>(n_max, 64);
  return detect_divergence(ins, s, q).has_value();
}

// --- multiset normal form ------------------------------------------------------

MultisetNF multiset_normal_form(const Instance& ins, const FactorStream& stream, long long depth,
                                long long mult_cap) {
  auto terms = stream.enumerate(ins, depth);
  std::map<Element, long long, ElementLess> counts;
  for (auto& t : terms) {
    long long& c = counts[t.factor];
    c += t.mult;
    if (c > mult_cap) {
      std::ostringstream os;
      os << "factor repeats more than " << mult_cap
         << " times: no element occurs infinitely often in a convergent product, so the "
            "stream is treated as divergent rather than normalized";
      throw MultiplicityError(os.str());
    }
  }
  MultisetNF nf;
  for (auto& [e, c] : counts) nf.entries.emplace_back(e, c);
  return nf;
}

FactorStream MultisetNF::to_stream(InstanceKind kind) const {
  std::vector<std::pair<Element, long long>> fs(entries.begin(), entries.end());
  return explicit_stream(kind, std::move(fs));
}

// --- decimation / dissociation -------------------------------------------------

namespace {

IndexSelector compose(const IndexSelector& base, const IndexSelector& extra) {
  // only the shapes the checks need: base All composes with anything; keep
  // and drop sets intersect with an All base
  if (base.kind == IndexSelector::Kind::All) return extra;
  if (extra.kind == IndexSelector::Kind::All) return base;
  throw std::invalid_argument("composite selectors are limited to one filter per stream");
}

StructuredReport decide_against_pool(const Instance& ins, const FactorStream& derived,
                                     const CandidatePool& pool, const VerifyParams& p) {
  StructuredReport rep;
  if (pool.use_instance_oracle && ins.topology() == TopologyStyle::PrefixAgreement) {
    // coordinatewise finiteness oracle
    bool coords_finite = true;
    for (long long i = 0; i < p.level + 8 && coords_finite; ++i)
      if (!derived.coordinate_total(ins, i)) coords_finite = false;
    if (!coords_finite) {
      rep.verdict = CheckVerdict::Fail;
      rep.note = "a coordinate receives unbounded multiplicity";
      rep.witness = detect_divergence(ins, derived, p);
      return rep;
    }
    auto limit = derived.pointwise_limit(ins);
    if (limit && ins.in_carrier(*limit)) {
      rep.verdict = CheckVerdict::Pass;
      rep.limit = limit;
      rep.note = "coordinatewise finite; limit in the carrier";
      rep.conv = verify_convergence(ins, derived, *limit, p.level, p.depth, p);
      return rep;
    }
    if (limit) {
      rep.verdict = CheckVerdict::Fail;
      rep.limit = limit;
      rep.note = "pointwise limit outside the carrier";
      rep.witness = DivergenceWitness{"limit-outside-carrier", rep.note, limit};
      return rep;
    }
    rep.verdict = CheckVerdict::Pass;
    rep.note =
        "coordinatewise finite: convergent in the full pointwise monoid (limit not "
        "base+delta encodable)";
    return rep;
  }

  VerifyParams per_candidate = p;
  per_candidate.enable_qsweep = false;  // the sweep runs once below, not per candidate
  for (const Element& cand : pool.explicit_pool) {
    auto conv = verify_convergence(ins, derived, cand, per_candidate.level, per_candidate.depth,
                                   per_candidate);
    if (conv.converged()) {
      rep.verdict = CheckVerdict::Pass;
      rep.limit = cand;
      rep.conv = conv;
      return rep;
    }
  }
  if (pool.rational_sweep && ins.kind() == InstanceKind::QPlus) {
    SweepResult sw = qplus_denominator_sweep(ins, derived, p.qmax, p.sweep_level_cap, p.depth);
    if (sw.all_excluded) {
      rep.verdict = CheckVerdict::Fail;
      rep.note = sw.detail;
      rep.witness = DivergenceWitness{"denominator-sweep", sw.detail, std::nullopt};
      return rep;
    }
    rep.verdict = CheckVerdict::Inconclusive;
    rep.note = "denominator sweep did not exclude every candidate";
    return rep;
  }
  if (auto div = detect_divergence(ins, derived, p)) {
    rep.verdict = CheckVerdict::Fail;
    rep.witness = div;
    rep.note = div->kind;
    return rep;
  }
  rep.verdict = CheckVerdict::Inconclusive;
  rep.note = "no pool candidate certified and no refutation found";
  return rep;
}

}  // namespace

StructuredReport check_arbitrary_decimation(const Instance& ins, const FactorStream& parent,
                                            const IndexSelector& subset,
                                            const CandidatePool& pool, const VerifyParams& p) {
  FactorStream derived(parent.kind(), parent.rule(), compose(parent.selector(), subset));
  return decide_against_pool(ins, derived, pool, p);
}

StructuredReport check_finite_decimation(const Instance& ins, const FactorStream& parent,
                                         const std::set<long long>& removed,
                                         const CandidatePool& pool, const VerifyParams& p) {
  FactorStream derived(parent.kind(), parent.rule(),
                       compose(parent.selector(), IndexSelector::drop(removed)));
  return decide_against_pool(ins, derived, pool, p);
}

StructuredReport check_dissociation_merged(const Instance& ins, const FactorStream& outer,
                                           const FactorStream& merged, const Element& outer_limit,
                                           const VerifyParams& p) {
  StructuredReport rep;
  rep.limit = outer_limit;
  // precondition: the outer stream itself certifies against its limit
  auto outer_conv = verify_convergence(ins, outer, outer_limit, p.level, p.depth, p);
  if (!outer_conv.converged()) {
    rep.verdict = CheckVerdict::Inconclusive;
    rep.note = "outer stream not certified against the stated limit";
    rep.conv = outer_conv;
    return rep;
  }
  auto conv = verify_convergence(ins, merged, outer_limit, p.level, p.depth * 4, p);
  rep.conv = conv;
  if (conv.converged()) {
    rep.verdict = CheckVerdict::Pass;
    return rep;
  }
  if (conv.diverged()) {
    rep.verdict = CheckVerdict::Fail;
    rep.witness = conv.witness;
    rep.note = conv.witness ? conv.witness->kind : "merged stream diverges";
    return rep;
  }
  rep.verdict = CheckVerdict::Inconclusive;
  rep.note = conv.note;
  return rep;
}

StructuredReport check_dissociation(const Instance& ins, const FactorStream& outer,
                                    const std::vector<FactorStream>& expansions,
                                    const Element& outer_limit, const VerifyParams& p) {
  // each expansion must certify against its outer factor
  auto outer_terms = outer.enumerate(ins, static_cast<long long>(expansions.size()));
  if (outer_terms.size() < expansions.size())
    throw std::invalid_argument("more expansions than outer factors");
  for (size_t s = 0; s < expansions.size(); ++s) {
    Element target = ins.power(outer_terms[s].factor, outer_terms[s].mult);
    auto conv = verify_convergence(ins, expansions[s], target, p.level, p.depth, p);
    if (!conv.converged()) {
      StructuredReport rep;
      rep.verdict = CheckVerdict::Inconclusive;
      std::ostringstream os;
      os << "expansion " << s << " not certified against its factor";
      rep.note = os.str();
      rep.conv = conv;
      return rep;
    }
  }
  FactorStream merged(ins.kind(),
                      InterleaveRule{std::make_shared<std::vector<FactorStream>>(expansions)});
  return check_dissociation_merged(ins, outer, merged, outer_limit, p);
}

BoundedVerdict finite_span_contains(const Instance& ins, const std::vector<Element>& M,
                                    const Element& x, long long degree_bound) {
  BoundedVerdict v;
  v.bound.degree = degree_bound;
  bool capped = false;
  long long examined = 0;
  std::vector<Element> witness;
  std::function<bool(size_t, const Element&, long long)> rec =
      [&](size_t from, const Element& cur, long long used) -> bool {
    if (cur == x) {
      v.status = VerdictStatus::Yes;
      v.witness = witness;
      return true;
    }
    if (used >= degree_bound) {
      capped = true;
      return false;
    }
    for (size_t i = from; i < M.size(); ++i) {
      if (++examined > v.bound.max_candidates) {
        capped = true;
        return false;
      }
      Element nxt = ins.combine(cur, M[i]);
      if (!ins.divides(nxt, x)) continue;  // exact prune: nxt must divide x
      witness.push_back(M[i]);
      if (rec(i, nxt, used + 1)) return true;
      witness.pop_back();
    }
    return false;
  };
  if (rec(0, ins.identity(), 0)) return v;
  v.status = VerdictStatus::No;
  v.note = capped ? "no representation within the degree bound"
                  : "exhaustive: every branch dies by divisibility";
  return v;
}

// --- the Q+ denominator sweep ---------------------------------------------------

SweepResult qplus_denominator_sweep(const Instance& ins, const FactorStream& stream,
                                    long long qmax, long long level_cap, long long depth) {
  SweepResult out;
  auto terms = stream.enumerate(ins, depth);
  Rat s = 0;
  for (auto& t : terms) s += ins.value(t.factor) * t.mult;
  Rat tail = Rat(0);
  if (!stream.finite_within(ins, depth)) {
    auto tb = stream.tail_value_bound(ins, static_cast<long long>(terms.size()));
    if (!tb) {
      out.detail = "no exact tail bound available";
      return out;
    }
    tail = *tb;
  }
  // any limit must lie in [s, s + tail]; a candidate c = p/q is excluded at
  // level k once its distance from that interval is >= 2^-k
  const BigInt N = numerator(s);
  const BigInt D = denominator(s);
  const BigInt Tn = numerator(tail);
  const BigInt Td = denominator(tail);
  const BigInt eps_shift = pow2(level_cap);  // compare against 2^-level_cap

  Rat min_gap(-1);
  long long worst_q = 0;
  for (long long q = 1; q <= qmax; ++q) {
    BigInt t = q * N;
    BigInt p = (2 * t + D) / (2 * D);  // round(q*s)
    BigInt diff = p * D - t;           // sign tells which side of s
    bool excluded;
    Rat gap;
    if (diff <= 0) {
      // c <= s: overshoot, gap = s - c = -diff/(qD)
      BigInt g = -diff;
      excluded = g * eps_shift >= q * D;
      gap = Rat(g, BigInt(q) * D);
    } else {
      // c > s: undershoot against s + tail: gap = diff/(qD) - tail
      BigInt lhs = diff * Td - BigInt(q) * D * Tn;  // gap numerator over qD*Td
      excluded = lhs > 0 && lhs * eps_shift >= BigInt(q) * D * Td;
      gap = Rat(lhs, BigInt(q) * D * Td);
    }
    if (!excluded) {
      out.all_excluded = false;
      std::ostringstream os;
      os << "candidate with denominator " << q << " not excluded at level <= " << level_cap;
      out.detail = os.str();
      out.worst_q = q;
      return out;
    }
    if (min_gap < 0 || gap < min_gap) {
      min_gap = gap;
      worst_q = q;
    }
  }
  out.all_excluded = true;
  out.min_gap = min_gap;
  out.worst_q = worst_q;
  auto lvl = exclusion_level(min_gap);
  out.max_level_needed = lvl ? *lvl : level_cap;
  std::ostringstream os;
  os << "every p/q with q <= " << qmax << " lies at distance >= " << rat_to_string(min_gap)
     << " from the attainable interval (worst q = " << worst_q << "), excluded at level <= "
     << out.max_level_needed;
  out.detail = os.str();
  return out;
}

}  // namespace topmon
