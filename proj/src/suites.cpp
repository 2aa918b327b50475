#include "topmon/suites.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "topmon/factorisation.hpp"
#include "topmon/io.hpp"
#include "topmon/monoid_ops.hpp"
#include "topmon/rng.hpp"

namespace topmon {

VerifyParams SuiteOptions::verify() const {
  VerifyParams p;
  p.depth = depth;
  p.level = level;
  p.seed = seed;
  p.qmax = qmax;
  return p;
}

InstanceParams SuiteOptions::instance_params() const {
  InstanceParams ip;
  ip.generators = generators;
  ip.window = window;
  ip.vars = vars;
  ip.precision = precision;
  return ip;
}

namespace {

CheckOutcome from_bool(bool b) { return b ? CheckOutcome::Pass : CheckOutcome::Fail; }

CheckOutcome from_check(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Pass: return CheckOutcome::Pass;
    case CheckVerdict::Fail: return CheckOutcome::Fail;
    case CheckVerdict::Inconclusive: return CheckOutcome::Inconclusive;
  }
  return CheckOutcome::Inconclusive;
}

struct SuiteBuilder {
  SuiteReport& r;

  void add(const std::string& id, const std::string& statement, CheckOutcome o,
           bool expect_fail = false,
           std::vector<std::pair<std::string, std::string>> params = {},
           std::string witness = {}) {
    r.add(CheckResult{id, statement, o, expect_fail, std::move(params), std::move(witness)});
  }
};

std::vector<Element> sample_elements(const Instance& ins, const SearchBound& b, Rng& rng,
                                     size_t count) {
  auto pool = ins.window_elements(b);
  std::vector<Element> out;
  if (pool.empty()) return out;
  for (size_t i = 0; i < count; ++i)
    out.push_back(pool[static_cast<size_t>(rng.below(pool.size()))]);
  return out;
}

// --- checks shared by every reduced instance ---------------------------------

void add_core_laws(SuiteBuilder& sb, const Instance& ins, const SuiteOptions& opt) {
  SearchBound bound = opt.bound();
  Rng rng(opt.seed ^ 0xc0deULL);

  {
    bool ok = true;
    auto xs = sample_elements(ins, bound, rng, 24);
    for (size_t i = 0; ok && i + 2 < xs.size(); i += 3) {
      const Element &a = xs[i], &b = xs[i + 1], &c = xs[i + 2];
      ok = ins.combine(ins.combine(a, b), c) == ins.combine(a, ins.combine(b, c)) &&
           ins.combine(a, b) == ins.combine(b, a) &&
           ins.combine(a, ins.identity()) == a;
    }
    sb.add("core.laws", "the operation is associative, commutative, identity-neutral",
           from_bool(ok), false, {{"samples", "8"}});
  }
  {
    bool ok = true;
    auto xs = sample_elements(ins, bound, rng, 24);
    for (size_t i = 0; ok && i + 2 < xs.size(); i += 3) {
      const Element &a = xs[i], &x = xs[i + 1], &y = xs[i + 2];
      if (x == y) continue;
      ok = !(ins.combine(a, x) == ins.combine(a, y));
    }
    sb.add("core.cancellation", "combine(a,x) = combine(a,y) implies x = y", from_bool(ok));
  }
  {
    bool ok = true;
    auto xs = sample_elements(ins, bound, rng, 20);
    for (size_t i = 0; ok && i + 1 < xs.size(); i += 2) {
      Element b = ins.combine(xs[i], xs[i + 1]);
      auto c = ins.divides(xs[i], b);
      ok = c.has_value() && ins.combine(xs[i], *c) == b;
    }
    sb.add("core.divides-exact", "divides(a,b) returns the unique c with combine(a,c) = b",
           from_bool(ok));
  }
  {
    // a prime verdict must never contradict irreducibility
    bool ok = true;
    auto pool = ins.atom_candidates(bound);
    size_t n = std::min<size_t>(pool.size(), 4);
    for (size_t i = 0; ok && i < n; ++i) {
      BoundedVerdict pr = is_prime_bounded(ins, pool[i], opt.max_factors, bound);
      if (!pr.yes()) continue;
      ok = is_irreducible(ins, pool[i], bound).yes();
    }
    sb.add("core.prime-implies-irreducible", "a prime element is always irreducible",
           from_bool(ok));
  }
}

void add_hausdorff_check(SuiteBuilder& sb, const Instance& ins, const SuiteOptions& opt,
                         bool expect_fail, const std::string& witness_note) {
  SearchBound bound = opt.bound();
  Rng rng(opt.seed ^ 0xaced);
  auto xs = sample_elements(ins, bound, rng, 30);
  bool separated = true;
  std::string wit;
  for (size_t i = 0; i + 1 < xs.size() && separated; i += 2) {
    const Element &x = xs[i], &y = xs[i + 1];
    if (x == y) continue;
    bool found = false;
    for (long long k = 0; k <= 64 && !found; ++k)
      if (!ins.neighborhood_contains(x, k, y)) found = true;
    if (!found) {
      separated = false;
      wit = print_element(ins, x) + " vs " + print_element(ins, y);
    }
  }
  if (ins.kind() == InstanceKind::Harmonic && separated) {
    // the pullback basis cannot separate phi-equal elements
    Element a = harmonic_e(1);
    Element b = make_harmonic({{2, 2}});
    bool found = false;
    for (long long k = 0; k <= 64 && !found; ++k)
      if (!ins.neighborhood_contains(a, k, b)) found = true;
    if (!found) {
      separated = false;
      wit = print_element(ins, a) + " vs " + print_element(ins, b) + " (equal phi)";
    }
  }
  sb.add("topo.hausdorff", "distinct window elements are separated at some level <= 64",
         from_bool(separated), expect_fail, {}, separated ? witness_note : wit);
}

void add_multiset_checks(SuiteBuilder& sb, const Instance& ins, const SuiteOptions& opt) {
  SearchBound bound = opt.bound();
  VerifyParams p = opt.verify();
  Rng rng(opt.seed ^ 0x9a77ULL);
  bool eval_ok = true;
  for (int t = 0; t < 40 && eval_ok; ++t) {
    auto xs = sample_elements(ins, bound, rng, 1 + rng.below(5));
    std::vector<std::pair<Element, long long>> fs;
    for (auto& x : xs) fs.emplace_back(x, 1 + static_cast<long long>(rng.below(3)));
    FactorStream s = explicit_stream(ins.kind(), fs);
    auto terms = s.enumerate(ins, 64);
    MultisetNF nf = multiset_normal_form(ins, s, 64, p.mult_cap);
    eval_ok = eval_all(ins, terms) == eval_all(ins, nf.to_stream(ins.kind()).enumerate(ins, 64));
  }
  sb.add("conv.multiset-normal-form",
         "a product evaluates exactly as its multiset normal form", from_bool(eval_ok), false,
         {{"streams", "40"}});
}

void add_powers_check(SuiteBuilder& sb, const Instance& ins, const SuiteOptions& opt,
                      const std::vector<Element>& samples) {
  bool ok = true;
  VerifyParams p = opt.verify();
  for (auto& x : samples)
    if (!(x == ins.identity())) ok = ok && powers_diverge(ins, x, 64, opt.level, p);
  sb.add("conv.powers-diverge", "the powers of a non-identity element diverge", from_bool(ok),
         false, {{"n_max", "64"}});
}

// --- per-instance suites ------------------------------------------------------

void laws_free(SuiteBuilder& sb, const SuiteOptions& opt) {
  auto insp = make_instance(InstanceKind::Free, opt.instance_params());
  const Instance& ins = *insp;
  SearchBound bound = opt.bound();
  VerifyParams p = opt.verify();
  add_core_laws(sb, ins, opt);
  add_hausdorff_check(sb, ins, opt, false, "");
  add_multiset_checks(sb, ins, opt);
  add_powers_check(sb, ins, opt, ins.atom_candidates(bound));

  {
    // pi is a bijection between windowed maps and windowed elements
    AtomUniverse u = ins.atom_universe(bound);
    auto maps = enumerate_window_maps(u, opt.degree);
    std::set<Element, ElementLess> images;
    for (auto& m : maps) images.insert(pi_finite(ins, u, m));
    auto elems = ins.window_elements(bound);
    bool ok = images.size() == maps.size() && elems.size() == maps.size();
    for (auto& e : elems) ok = ok && images.count(e) > 0;
    sb.add("free.pi-bijective",
           "the factorisation homomorphism is a bijection onto windowed maps", from_bool(ok),
           false,
           {{"degree", std::to_string(opt.degree)}, {"maps", std::to_string(maps.size())}});
  }
  {
    auto atoms = enumerate_atoms(ins, bound);
    bool ok = static_cast<long long>(atoms.size()) ==
              std::min(opt.generators, opt.window);
    for (auto& a : atoms) ok = ok && std::get<ExpVec>(a.p).total_degree() == 1;
    sb.add("free.atoms-are-generators", "the atoms are exactly the generators", from_bool(ok));
  }
  {
    // irreducible iff a generator, by enumeration up to total degree 6
    SearchBound b6 = bound;
    b6.degree = 6;
    bool ok = true;
    for (auto& x : ins.window_elements(b6)) {
      bool gen = std::get<ExpVec>(x.p).total_degree() == 1;
      ok = ok && (is_irreducible(ins, x, b6).yes() == gen);
    }
    sb.add("free.irreducible-iff-generator",
           "an element is irreducible exactly when it is a generator", from_bool(ok), false,
           {{"degree", "6"}});
  }
  {
    AtomUniverse u = ins.atom_universe(bound);
    auto r = zh_atoms_check(ins, u, std::min<long long>(opt.degree, 4), p);
    sb.add("z.atoms", "the atoms of Z are exactly the unit coordinate maps", from_check(r.verdict),
           false, {}, r.note);
    auto maps = enumerate_window_maps(u, std::min<long long>(opt.degree, 3));
    bool hom = true;
    for (size_t i = 0; i < maps.size() && hom; i += 7)
      for (size_t j = i; j < maps.size() && hom; j += 11) {
        ZhAddResult za = zh_add(ins, u, maps[i], maps[j], p);
        hom = za.membership.in_z() && za.homomorphism_ok;
      }
    sb.add("z.add-homomorphism", "Z is a monoid and pi_bar is a homomorphism", from_bool(hom));
    bool xi_ok = true;
    for (size_t i = 0; i < maps.size() && xi_ok; i += 5)
      xi_ok = xi_section_check(ins, u, maps[i], p).verdict == CheckVerdict::Pass;
    sb.add("z.xi-section", "Xi is a section of the factorisation homomorphism of Z",
           from_bool(xi_ok));
    bool uf = true;
    for (size_t i = 0; i < maps.size() && uf; i += 5)
      uf = zh_unique_factorisation_check(ins, u, maps[i], p).verdict == CheckVerdict::Pass;
    sb.add("z.unique-factorisation", "Z is topologically prime factorial on the window",
           from_bool(uf));
    // discreteness transfers to Z: convergent sequences are eventually constant
    Rng rng(opt.seed ^ 0xd15cULL);
    bool disc = true;
    for (int t = 0; t < 12 && disc; ++t) {
      std::vector<ExponentMap> seq;
      ExponentMap lim = maps[rng.below(maps.size())];
      long long settle = 2 + static_cast<long long>(rng.below(4));
      for (long long i = 0; i < 8; ++i)
        seq.push_back(i < settle ? maps[rng.below(maps.size())] : lim);
      ZNetReport r2 = zh_net_convergence(ins, u, seq, lim, p);
      if (r2.verdict == CheckVerdict::Pass) disc = r2.eventually_constant;
    }
    sb.add("z.discrete-to-discrete", "convergent sequences in Z of a discrete monoid stabilize",
           from_bool(disc), false, {{"samples", "12"}});
  }
}

void laws_qplus(SuiteBuilder& sb, const SuiteOptions& opt) {
  auto insp = make_instance(InstanceKind::QPlus, opt.instance_params());
  const Instance& ins = *insp;
  SearchBound bound = opt.bound();
  VerifyParams p = opt.verify();
  add_core_laws(sb, ins, opt);
  add_hausdorff_check(sb, ins, opt, false, "");
  add_multiset_checks(sb, ins, opt);
  add_powers_check(sb, ins, opt, {make_qplus(Rat(1, 2)), make_qplus(1)});

  {
    FactorStream g = geometric_stream(Rat(1, 2));
    Element one = make_qplus(1);
    bool ok = true;
    long long levels = std::min<long long>(opt.level, 20);
    for (long long k = 0; k <= levels && ok; ++k)
      ok = verify_convergence(ins, g, one, k, std::max<long long>(opt.depth, levels + 4), p)
               .converged();
    sb.add("qplus.geometric", "the dyadic geometric sum converges to 1 at every tested level",
           from_bool(ok), false, {{"levels", std::to_string(levels)}});
  }
  {
    auto atoms = enumerate_atoms(ins, bound);
    sb.add("qplus.atomless", "the divisible monoid has no atoms", from_bool(atoms.empty()));
  }
  {
    FactorStream g = geometric_stream(Rat(1, 2));
    CandidatePool pool;
    pool.explicit_pool = {make_qplus(Rat(1, 2))};
    auto rep = check_finite_decimation(ins, g, {1}, pool, p);
    bool ok = rep.verdict == CheckVerdict::Pass && rep.limit &&
              *rep.limit == make_qplus(Rat(1, 2));
    sb.add("qplus.finite-decimation", "removing one term moves the limit by that term exactly",
           from_bool(ok));
  }
  {
    FactorStream g = geometric_stream(Rat(1, 2));
    CandidatePool pool;
    pool.rational_sweep = true;
    VerifyParams ps = p;
    ps.enable_qsweep = true;
    ps.depth = 20;
    auto rep = check_arbitrary_decimation(ins, g, IndexSelector::squares(), pool, ps);
    sb.add("qplus.arbitrary-decimation",
           "the sub-sum over square indices admits no bounded-denominator rational limit",
           from_check(rep.verdict), true, {{"qmax", std::to_string(ps.qmax)}}, rep.note);
  }
  {
    // dissociation: expand each of three dyadic terms into its geometric tail
    Element one = make_qplus(1);
    std::vector<std::pair<Element, long long>> outer_fs = {
        {make_qplus(Rat(1, 2)), 1}, {make_qplus(Rat(1, 4)), 1}, {make_qplus(Rat(1, 4)), 1}};
    FactorStream outer = explicit_stream(InstanceKind::QPlus, outer_fs);
    std::vector<FactorStream> exps;
    exps.emplace_back(InstanceKind::QPlus, GeometricRule{Rat(1, 2), Rat(1, 2)});
    exps.emplace_back(InstanceKind::QPlus, GeometricRule{Rat(1, 2), Rat(1, 4)});
    exps.push_back(explicit_stream(InstanceKind::QPlus, {{make_qplus(Rat(1, 8)), 2}}));
    auto rep = check_dissociation(ins, outer, exps, one, p);
    sb.add("qplus.dissociation", "nested positive sums merge into one convergent sum",
           from_check(rep.verdict), false, {}, rep.note);
  }
}

void laws_harmonic(SuiteBuilder& sb, const SuiteOptions& opt) {
  auto insp = make_instance(InstanceKind::Harmonic, opt.instance_params());
  const Instance& ins = *insp;
  SearchBound bound = opt.bound();
  VerifyParams p = opt.verify();
  add_core_laws(sb, ins, opt);
  add_hausdorff_check(sb, ins, opt, true,
                      "phi identifies distinct elements; the pullback basis cannot separate "
                      "them");
  add_multiset_checks(sb, ins, opt);
  add_powers_check(sb, ins, opt, {harmonic_e(1), harmonic_e(5)});

  {
    bool ok = harmonic_phi(harmonic_e(0)) == 0;
    for (long long i = 1; i <= 8; ++i) ok = ok && harmonic_phi(harmonic_e(i)) == Rat(1, i);
    ok = ok && harmonic_phi(make_harmonic({{2, 1}, {3, 1}})) == Rat(5, 6);
    sb.add("harm.phi", "phi maps e0 to 0 and e_i to 1/i additively", from_bool(ok));
  }
  {
    bool ok = true;
    long long kmax = std::min<long long>(opt.level, 14);
    for (long long k = 0; k <= kmax && ok; ++k) {
      long long n = (1LL << k) + 1;
      ok = ins.neighborhood_contains(harmonic_e(0), k, harmonic_e(n)) &&
           !ins.neighborhood_contains(harmonic_e(0), k, harmonic_e(1LL << k));
    }
    sb.add("harm.en-to-e0", "e_n enters U_k(e0) exactly from n = 2^k + 1 on", from_bool(ok),
           false, {{"kmax", std::to_string(kmax)}});
  }
  {
    std::vector<Element> M;
    for (long long n = 1; n <= opt.window; ++n) M.push_back(harmonic_e(n));
    auto v = finite_span_contains(ins, M, harmonic_e(0), opt.degree);
    sb.add("harm.e0-not-in-span", "e0 is not a finite combination over {e_n : n >= 1}",
           from_bool(v.no()), false, {}, v.note);
  }
  {
    // positivity: no stream over M certifies e0 as its limit
    bool ok = true;
    std::string note;
    for (long long start : {1LL, 5LL}) {
      FactorStream s(InstanceKind::Harmonic, HarmonicFromRule{start});
      auto rep = verify_convergence(ins, s, harmonic_e(0), opt.level, opt.depth, p);
      ok = ok && !rep.converged();
      if (rep.witness) note = rep.witness->kind;
    }
    FactorStream fin = explicit_stream(InstanceKind::Harmonic, {{harmonic_e(3), 1}});
    ok = ok && !verify_convergence(ins, fin, harmonic_e(0), opt.level, opt.depth, p).converged();
    sb.add("harm.positivity-excludes-e0",
           "no nonempty sum over {e_n : n >= 1} is certified with candidate e0", from_bool(ok),
           false, {}, note);
  }
  {
    auto atoms = enumerate_atoms(ins, bound);
    std::vector<Element> want;
    for (long long i = 0; i < opt.window; ++i) want.push_back(harmonic_e(i));
    sb.add("harm.atoms", "the atoms are the basis vectors e0..e_{W-1}",
           from_bool(atoms == want));
  }
}

void laws_series(SuiteBuilder& sb, const SuiteOptions& opt) {
  auto insp = make_instance(InstanceKind::Series, opt.instance_params());
  const Instance& ins = *insp;
  SearchBound bound = opt.bound();
  VerifyParams p = opt.verify();
  add_core_laws(sb, ins, opt);
  add_hausdorff_check(sb, ins, opt, false, "");
  add_multiset_checks(sb, ins, opt);
  {
    auto pool = ins.window_elements(bound);
    std::vector<Element> s(pool.begin(), pool.begin() + std::min<size_t>(pool.size(), 2));
    add_powers_check(sb, ins, opt, s);
  }
  {
    bool ok = true;
    auto pool = ins.window_elements(bound);
    for (size_t i = 0; i + 1 < pool.size() && ok; i += 2) {
      Element prod = ins.combine(pool[i], pool[i + 1]);
      long long v = ins.valuation(prod);
      long long expect = std::min<long long>(ins.valuation(pool[i]) + ins.valuation(pool[i + 1]),
                                             ins.params().precision);
      ok = v == expect;
    }
    sb.add("series.valuation-additive", "valuation adds under multiplication", from_bool(ok));
  }
  {
    // almost discrete: partial-product valuations strictly increase and no
    // infinite stream certifies against a carrier candidate
    Rng rng(opt.seed ^ 0x5e71e5ULL);
    auto pool = ins.window_elements(bound);
    bool ok = true;
    std::string note;
    for (int t = 0; t < 8 && ok; ++t) {
      std::vector<std::pair<Element, long long>> fs;
      size_t len = 2 + rng.below(3);
      for (size_t i = 0; i < len; ++i) fs.emplace_back(pool[rng.below(pool.size())], 1);
      Element acc = ins.identity();
      long long last = 0;
      for (auto& [f, m] : fs) {
        acc = ins.combine(acc, f);
        long long v = std::min<long long>(ins.valuation(acc), ins.params().precision);
        ok = ok && (v > last || v == ins.params().precision);
        last = v;
      }
      FactorStream inf(InstanceKind::Series, ConstantRule{fs[0].first});
      auto rep = verify_convergence(ins, inf, acc, ins.params().precision, opt.depth, p);
      ok = ok && !rep.converged();
      if (rep.witness) note = rep.witness->kind;
      FactorStream finite = explicit_stream(InstanceKind::Series, fs);
      ok = ok && verify_convergence(ins, finite, acc, ins.params().precision, opt.depth, p)
                     .converged();
    }
    sb.add("series.almost-discrete",
           "infinite products escape every carrier candidate; finite products certify exactly",
           from_bool(ok), false, {{"streams", "8"}}, note);
  }
  {
    bool ok = !ins.in_carrier(make_series(opt.vars, opt.precision, {}));
    Mono m0(static_cast<size_t>(opt.vars), 0);
    ok = ok && !ins.in_carrier(make_series(opt.vars, opt.precision, {{m0, Rat(2)}}));
    sb.add("series.carrier", "the carrier is 1 together with the nonzero constant-term-0 series",
           from_bool(ok));
  }
}

void laws_pointwise(SuiteBuilder& sb, const SuiteOptions& opt) {
  auto insp = make_instance(InstanceKind::Pointwise, opt.instance_params());
  const Instance& ins = *insp;
  SearchBound bound = opt.bound();
  VerifyParams p = opt.verify();
  add_core_laws(sb, ins, opt);
  add_hausdorff_check(sb, ins, opt, false, "");
  add_multiset_checks(sb, ins, opt);
  add_powers_check(sb, ins, opt, {seq_chi(InstanceKind::Pointwise, 0)});

  {
    FactorStream all(InstanceKind::Pointwise, ChiFromRule{0});
    CandidatePool pool;
    pool.use_instance_oracle = true;
    bool ok = true;
    for (auto sel : {IndexSelector::evens(), IndexSelector::drop({0, 3}),
                     IndexSelector::keep({1, 4, 9})}) {
      auto rep = check_arbitrary_decimation(ins, all, sel, pool, p);
      ok = ok && rep.verdict == CheckVerdict::Pass;
    }
    sb.add("pw.arbitrary-decimation",
           "every sub-product of a coordinatewise-finite product converges", from_bool(ok));
  }
  {
    AtomUniverse u = ins.atom_universe(bound);
    ExponentMap c = all_ones_map();
    ExponentMap d;
    d.base = 1;
    d.coord_off[0] = -1;
    auto rep = order_ideal_check(ins, u, c, d, p);
    sb.add("pw.order-ideal", "Z of the full pointwise monoid is downward closed on samples",
           from_check(rep.verdict));
  }
  {
    auto atoms = enumerate_atoms(ins, bound);
    bool ok = static_cast<long long>(atoms.size()) == opt.window;
    for (long long i = 0; ok && i < opt.window; ++i)
      ok = atoms[static_cast<size_t>(i)] == seq_chi(InstanceKind::Pointwise, i);
    sb.add("pw.atoms", "the atoms are the unit coordinate sequences", from_bool(ok));
  }
}

void laws_restricted(SuiteBuilder& sb, const SuiteOptions& opt) {
  auto insp = make_instance(InstanceKind::Restricted, opt.instance_params());
  const Instance& ins = *insp;
  SearchBound bound = opt.bound();
  VerifyParams p = opt.verify();
  const Element f = make_seq(InstanceKind::Restricted, 1, {});
  const Element chi0 = seq_chi(InstanceKind::Restricted, 0);
  add_core_laws(sb, ins, opt);
  add_hausdorff_check(sb, ins, opt, false, "");
  add_multiset_checks(sb, ins, opt);
  add_powers_check(sb, ins, opt, {chi0, f});

  {
    sb.add("sec5.chi0-not-divisor", "chi_0 is not a divisor of the constant-one function",
           from_bool(!ins.divides(chi0, f).has_value()));
  }
  {
    bool carrier = !ins.in_carrier(make_seq(InstanceKind::Restricted, 1, {{0, -1}}));
    carrier = carrier && ins.in_carrier(ins.combine(f, f)) && ins.in_carrier(ins.combine(f, chi0));
    sb.add("sec5.carrier", "the carrier is closed under sums and excludes (0,1,1,...)",
           from_bool(carrier));
  }
  {
    sb.add("sec5.f-irreducible", "the constant-one function admits no finite split",
           from_bool(is_irreducible(ins, f, bound).yes()));
    sb.add("sec5.f-prime",
           "the constant-one function divides no witness product within the window",
           from_bool(is_prime_bounded(ins, f, opt.max_factors, bound).yes()));
  }
  {
    auto v = topologically_prime_check(ins, f, {}, bound, p);
    sb.add("sec5.f-not-top-prime",
           "the constant-one function divides an infinite convergent product of atoms but "
           "none of its factors",
           from_bool(v.no()), false, {}, v.note);
    auto w = topologically_irreducible_check(ins, f, bound, p);
    sb.add("sec5.f-not-top-irreducible",
           "the constant-one function is a convergent product of elements different from it",
           from_bool(w.no()), false, {}, w.note);
  }
  {
    // the claim that the chi_j are (topologically) prime fails: chi_j divides
    // f+f without dividing f
    auto v = is_prime_bounded(ins, chi0, opt.max_factors, bound);
    std::string wit;
    if (v.no()) {
      wit = "product of";
      for (auto& e : v.witness) wit += " " + print_element(ins, e);
    }
    sb.add("sec5.chi-prime-claim", "chi_0 is prime", from_bool(v.yes()), true, {}, wit);
  }
  {
    auto atoms = enumerate_atoms(ins, bound);
    std::vector<Element> want;
    for (long long i = 0; i < opt.window; ++i) want.push_back(seq_chi(InstanceKind::Restricted, i));
    want.push_back(f);
    sb.add("sec5.atoms", "the window atoms are chi_0..chi_{W-1} and the constant-one function",
           from_bool(atoms == want), false,
           {{"count", std::to_string(atoms.size())}});
  }
  {
    AtomUniverse u = ins.atom_universe(bound);
    ZMembershipReport all = pi_bar(ins, u, all_ones_map(), p);
    bool ok = all.in_z() && all.limit && *all.limit == f;
    sb.add("sec5.pi-bar-all-ones", "the all-ones map evaluates to the constant-one function",
           from_bool(ok));
    ExponentMap d;
    d.base = 1;
    d.coord_off[0] = -1;
    auto rep = order_ideal_check(ins, u, all_ones_map(), d, p);
    sb.add("sec5.order-ideal", "Z is an order ideal", from_check(rep.verdict), true, {},
           rep.note);
    auto rep2 = zh_atoms_check(ins, u, std::min<long long>(opt.degree, 4), p);
    sb.add("z.atoms", "the atoms of Z are exactly the unit coordinate maps",
           from_check(rep2.verdict), false, {}, rep2.note);
    auto rep3 = xi_section_check(ins, u, all_ones_map(), p);
    sb.add("z.xi-section-all-ones", "Xi is a section on the all-ones map",
           from_check(rep3.verdict), false, {}, rep3.note);
    auto rep4 = unique_factorisation_check(ins, f, bound, p);
    sb.add("sec5.f-two-factorisations",
           "the constant-one function factors uniquely into window atoms",
           from_check(rep4.verdict), true, {},
           std::to_string(rep4.factorisations.size()) + " factorisations found");
  }
  {
    FactorStream from1(InstanceKind::Restricted, ChiFromRule{1});
    auto div = detect_divergence(ins, from1, p);
    bool ok = div && div->kind == "limit-outside-carrier";
    sb.add("sec5.finite-decimation",
           "removing chi_0 from the all-atom product leaves a convergent product",
           from_bool(!ok), true, {},
           div ? div->kind : "no witness");
  }
}

void laws_integers(SuiteBuilder& sb, const SuiteOptions& opt) {
  auto insp = make_instance(InstanceKind::IntegersDemo, opt.instance_params());
  const Instance& ins = *insp;
  VerifyParams p = opt.verify();
  sb.add("int.flagged-non-reduced",
         "the additive integers are non-reduced and excluded from the standing assumptions",
         from_bool(!ins.reduced() && ins.is_unit(make_integer(5))));
  {
    FactorStream ramp(InstanceKind::IntegersDemo, IntegersFromRule{1});
    auto div = detect_divergence(ins, ramp, p);
    sb.add("int.ramp-diverges", "the sum of all positive integers has unbounded partial sums",
           from_bool(div && div->kind == "partial-sums-unbounded"), false, {},
           div ? div->detail.substr(0, 60) : "");
  }
  {
    FactorStream outer(InstanceKind::IntegersDemo, ConstantRule{make_integer(0)});
    FactorStream merged(InstanceKind::IntegersDemo, IntegersPairedRule{});
    auto rep = check_dissociation_merged(ins, outer, merged, make_integer(0), p);
    sb.add("int.dissociation",
           "expanding each zero as k + (-k) yields a convergent merged sum",
           from_check(rep.verdict), true, {},
           rep.witness ? rep.witness->kind : rep.note);
  }
}

}  // namespace

SuiteReport check_laws(const std::string& instance_name, const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "check-laws " + instance_name;
  r.config = {{"window", std::to_string(opt.window)},
              {"depth", std::to_string(opt.depth)},
              {"level", std::to_string(opt.level)},
              {"seed", std::to_string(opt.seed)},
              {"qmax", std::to_string(opt.qmax)},
              {"max-factors", std::to_string(opt.max_factors)},
              {"degree", std::to_string(opt.degree)}};
  SuiteBuilder sb{r};
  auto kind = kind_from_name(instance_name);
  if (!kind) throw std::invalid_argument("unknown instance: " + instance_name);
  switch (*kind) {
    case InstanceKind::Free: laws_free(sb, opt); break;
    case InstanceKind::QPlus: laws_qplus(sb, opt); break;
    case InstanceKind::Harmonic: laws_harmonic(sb, opt); break;
    case InstanceKind::Series: laws_series(sb, opt); break;
    case InstanceKind::Pointwise: laws_pointwise(sb, opt); break;
    case InstanceKind::Restricted: laws_restricted(sb, opt); break;
    case InstanceKind::IntegersDemo: laws_integers(sb, opt); break;
  }
  r.sort_by_id();
  return r;
}

std::vector<std::string> law_suite_names() {
  return {"free", "qplus", "harmonic", "series", "pointwise", "restricted", "integers-demo"};
}

std::vector<std::string> demo_names() {
  return {"qplus-decimation",      "harmonic-closure",   "restricted-order-ideal",
          "restricted-prime-not-topprime", "integers-dissociation", "series-almost-discrete",
          "zh-inverse-not-continuous"};
}

SuiteReport run_demo(const std::string& name, const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "demo " + name;
  r.config = {{"window", std::to_string(opt.window)},
              {"depth", std::to_string(opt.depth)},
              {"level", std::to_string(opt.level)},
              {"seed", std::to_string(opt.seed)},
              {"qmax", std::to_string(opt.qmax)}};
  SuiteBuilder sb{r};
  VerifyParams p = opt.verify();
  SearchBound bound = opt.bound();

  if (name == "qplus-decimation") {
    auto insp = make_instance(InstanceKind::QPlus, opt.instance_params());
    const Instance& ins = *insp;
    FactorStream g = geometric_stream(Rat(1, 2));
    Element one = make_qplus(1);
    sb.add("demo.parent-converges", "the dyadic geometric sum converges to 1",
           from_bool(verify_convergence(ins, g, one, opt.level, 24, p).converged()));
    VerifyParams ps = p;
    ps.enable_qsweep = true;
    ps.depth = 20;
    CandidatePool pool;
    pool.rational_sweep = true;
    auto rep = check_arbitrary_decimation(ins, g, IndexSelector::squares(), pool, ps);
    sb.add("demo.squares-sub-sum", "the square-index sub-sum converges to a rational",
           from_check(rep.verdict), true, {{"qmax", std::to_string(ps.qmax)}}, rep.note);
  } else if (name == "harmonic-closure") {
    auto insp = make_instance(InstanceKind::Harmonic, opt.instance_params());
    const Instance& ins = *insp;
    bool closure = true;
    for (long long k = 0; k <= 12; ++k)
      closure = closure && ins.neighborhood_contains(harmonic_e(0), k, harmonic_e((1LL << k) + 1));
    sb.add("demo.e0-in-closure", "every ball around e0 contains some e_n", from_bool(closure));
    std::vector<Element> M;
    for (long long n = 1; n <= opt.window; ++n) M.push_back(harmonic_e(n));
    auto v = finite_span_contains(ins, M, harmonic_e(0), opt.degree);
    sb.add("demo.e0-not-in-span", "e0 is a finite combination over M", from_bool(v.yes()), true,
           {}, v.note);
    FactorStream s(InstanceKind::Harmonic, HarmonicFromRule{1});
    auto rep = verify_convergence(ins, s, harmonic_e(0), opt.level, opt.depth, p);
    sb.add("demo.e0-not-certified", "a sum over M is certified with candidate e0",
           from_bool(rep.converged()), true, {},
           rep.witness ? rep.witness->kind : rep.note);
  } else if (name == "restricted-order-ideal") {
    auto insp = make_instance(InstanceKind::Restricted, opt.instance_params());
    const Instance& ins = *insp;
    AtomUniverse u = ins.atom_universe(bound);
    ZMembershipReport all = pi_bar(ins, u, all_ones_map(), p);
    sb.add("demo.all-ones-in-z", "the all-ones map lies in Z",
           from_bool(all.in_z() && all.limit &&
                     *all.limit == make_seq(InstanceKind::Restricted, 1, {})));
    ExponentMap d;
    d.base = 1;
    d.coord_off[0] = -1;
    ZMembershipReport dec = pi_bar(ins, u, d, p);
    sb.add("demo.decimated-map-in-z", "the all-ones map minus chi_0 stays in Z",
           from_bool(dec.in_z()), true, {}, dec.note);
  } else if (name == "restricted-prime-not-topprime") {
    auto insp = make_instance(InstanceKind::Restricted, opt.instance_params());
    const Instance& ins = *insp;
    Element f = make_seq(InstanceKind::Restricted, 1, {});
    sb.add("demo.f-prime", "the constant-one function is prime within the window",
           from_bool(is_prime_bounded(ins, f, opt.max_factors, bound).yes()));
    auto v = topologically_prime_check(ins, f, {}, bound, p);
    sb.add("demo.f-top-prime", "the constant-one function is topologically prime",
           from_bool(v.yes()), true, {}, v.note);
  } else if (name == "integers-dissociation") {
    auto insp = make_instance(InstanceKind::IntegersDemo, opt.instance_params());
    const Instance& ins = *insp;
    FactorStream outer(InstanceKind::IntegersDemo, ConstantRule{make_integer(0)});
    FactorStream merged(InstanceKind::IntegersDemo, IntegersPairedRule{});
    auto rep = check_dissociation_merged(ins, outer, merged, make_integer(0), p);
    sb.add("demo.integers-dissociation", "the merged sum over all k and -k converges to 0",
           from_check(rep.verdict), true, {}, rep.witness ? rep.witness->kind : rep.note);
  } else if (name == "series-almost-discrete") {
    SuiteOptions o2 = opt;
    SuiteReport inner = check_laws("series", o2);
    for (auto& c : inner.checks)
      if (c.id == "series.almost-discrete" || c.id == "series.valuation-additive") r.add(c);
  } else if (name == "zh-inverse-not-continuous") {
    auto insp = make_instance(InstanceKind::Harmonic, opt.instance_params());
    const Instance& ins = *insp;
    SearchBound wide = bound;
    wide.window = std::max<long long>(bound.window, 40);
    AtomUniverse u = ins.atom_universe(wide);
    std::vector<ExponentMap> seq;
    for (long long i = 33; i < 40; ++i) seq.push_back(chi_key(AtomKey{false, i}));
    ExponentMap lim = chi_key(AtomKey{false, 0});
    VerifyParams p5 = p;
    p5.level = 5;
    ZNetReport rep = zh_net_convergence(ins, u, seq, lim, p5);
    bool images_converge = true;
    for (long long i = 33; i < 40 && images_converge; ++i)
      images_converge = ins.neighborhood_contains(harmonic_e(0), 5, harmonic_e(i));
    sb.add("demo.pi-bar-images-converge", "pi_bar of the sequence converges to e0 in H",
           from_bool(images_converge));
    sb.add("demo.projection-stabilizes", "the projection at the e0 atom stabilizes to 1",
           from_bool(rep.verdict == CheckVerdict::Pass), true, {}, rep.note);
  } else {
    throw std::invalid_argument("unknown demo: " + name);
  }
  r.sort_by_id();
  return r;
}

}  // namespace topmon
