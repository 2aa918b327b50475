#include <doctest.h>

#include <functional>
#include <map>
#include <vector>

#include "topmon/monoid_ops.hpp"
#include "topmon/rng.hpp"

using namespace topmon;

namespace {

const InstanceParams kTwoGens{2, 12, 2, 8};

// independent witness re-check for free elements: componentwise comparison of
// raw exponent maps, no library divisibility involved
bool exp_leq(const Element& a, const Element& b) {
  const auto& x = std::get<ExpVec>(a.p).e;
  const auto& y = std::get<ExpVec>(b.p).e;
  for (auto& [i, v] : x) {
    auto it = y.find(i);
    if (it == y.end() || it->second < v) return false;
  }
  return true;
}

Element exp_sum(const std::vector<Element>& es) {
  std::map<long long, long long> m;
  for (auto& e : es)
    for (auto& [i, v] : std::get<ExpVec>(e.p).e) m[i] += v;
  return make_free(m);
}

}  // namespace

TEST_CASE("combine: free monoid, identity, exact fractions") {
  auto free2 = make_instance(InstanceKind::Free, kTwoGens);
  Element x = make_free({{0, 1}});
  Element y2 = make_free({{1, 2}});
  CHECK(free2->combine(x, y2) == make_free({{0, 1}, {1, 2}}));
  CHECK(free2->combine(free2->identity(), x) == x);

  auto qp = make_instance(InstanceKind::QPlus);
  CHECK(qp->combine(make_qplus(Rat(1, 3)), make_qplus(Rat(1, 6))) == make_qplus(Rat(1, 2)));
}

TEST_CASE("combine rejects mixed instances") {
  auto free2 = make_instance(InstanceKind::Free, kTwoGens);
  CHECK_THROWS_AS(free2->combine(make_free({{0, 1}}), make_qplus(1)), std::invalid_argument);
}

TEST_CASE("divides: free subtraction, identity, the section-5 non-divisor") {
  auto free2 = make_instance(InstanceKind::Free, kTwoGens);
  Element x = make_free({{0, 1}});
  Element xy2 = make_free({{0, 1}, {1, 2}});
  auto c = free2->divides(x, xy2);
  REQUIRE(c.has_value());
  CHECK(*c == make_free({{1, 2}}));
  CHECK(*free2->divides(free2->identity(), xy2) == xy2);

  auto rs = make_instance(InstanceKind::Restricted);
  Element f = make_seq(InstanceKind::Restricted, 1, {});
  Element chi0 = seq_chi(InstanceKind::Restricted, 0);
  CHECK_FALSE(rs->divides(chi0, f).has_value());
  // the would-be quotient (0,1,1,...) exists in N^N but not in the carrier
  auto pw = make_instance(InstanceKind::Pointwise);
  Element fp = make_seq(InstanceKind::Pointwise, 1, {});
  Element chi0p = seq_chi(InstanceKind::Pointwise, 0);
  auto q = pw->divides(chi0p, fp);
  REQUIRE(q.has_value());
  CHECK(*q == make_seq(InstanceKind::Pointwise, 1, {{0, -1}}));
}

TEST_CASE("power: identity case, exponent scaling, fraction scaling") {
  auto free2 = make_instance(InstanceKind::Free, kTwoGens);
  Element xy = make_free({{0, 1}, {1, 1}});
  CHECK(free2->power(xy, 0) == free2->identity());
  CHECK(free2->power(xy, 3) == make_free({{0, 3}, {1, 3}}));

  auto qp = make_instance(InstanceKind::QPlus);
  CHECK(qp->power(make_qplus(Rat(1, 4)), 3) == make_qplus(Rat(3, 4)));
}

TEST_CASE("is_unit") {
  auto free2 = make_instance(InstanceKind::Free, kTwoGens);
  CHECK(free2->is_unit(free2->identity()));
  CHECK_FALSE(free2->is_unit(make_free({{0, 1}})));
  auto rs = make_instance(InstanceKind::Restricted);
  CHECK_FALSE(rs->is_unit(make_seq(InstanceKind::Restricted, 1, {})));
}

TEST_CASE("is_irreducible: generators split products, section-5 atoms hold") {
  SearchBound bound{12, 5};
  auto free2 = make_instance(InstanceKind::Free, kTwoGens);
  Element xy = make_free({{0, 1}, {1, 1}});
  auto v = is_irreducible(*free2, xy, bound);
  CHECK(v.no());
  REQUIRE(v.witness.size() == 2);
  CHECK(free2->combine(v.witness[0], v.witness[1]) == xy);
  CHECK_FALSE(free2->is_unit(v.witness[0]));
  CHECK_FALSE(free2->is_unit(v.witness[1]));

  auto rs = make_instance(InstanceKind::Restricted);
  Element f = make_seq(InstanceKind::Restricted, 1, {});
  CHECK(is_irreducible(*rs, seq_chi(InstanceKind::Restricted, 0), bound).yes());
  CHECK(is_irreducible(*rs, f, bound).yes());

  CHECK_THROWS_AS(is_irreducible(*free2, free2->identity(), bound), std::invalid_argument);
}

TEST_CASE("is_prime_bounded: witness for x*y, primality of a generator") {
  SearchBound bound{12, 4};
  auto free2 = make_instance(InstanceKind::Free, kTwoGens);
  Element x = make_free({{0, 1}});
  Element xy = make_free({{0, 1}, {1, 1}});

  auto v = is_prime_bounded(*free2, xy, 2, bound);
  CHECK(v.no());
  REQUIRE(v.witness.size() >= 2);
  // re-check the witness by exponent comparison only
  Element prod = exp_sum(v.witness);
  CHECK(exp_leq(xy, prod));
  for (auto& w : v.witness) CHECK_FALSE(exp_leq(xy, w));

  // brute-force oracle: no product of <= 3 window elements with x | P avoids
  // an x-divisible factor, because x | P forces some factor to contain x
  auto pool = free2->window_elements(bound);
  bool oracle_counterexample = false;
  std::function<void(size_t, std::vector<Element>&)> rec = [&](size_t from,
                                                               std::vector<Element>& cur) {
    if (oracle_counterexample) return;
    if (cur.size() >= 2) {
      Element p = exp_sum(cur);
      if (exp_leq(x, p)) {
        bool some = false;
        for (auto& g : cur) some = some || exp_leq(x, g);
        if (!some) oracle_counterexample = true;
      }
    }
    if (cur.size() == 3) return;
    for (size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i, cur);
      cur.pop_back();
    }
  };
  std::vector<Element> cur;
  rec(0, cur);
  CHECK_FALSE(oracle_counterexample);
  CHECK(is_prime_bounded(*free2, x, 3, bound).yes());
}

TEST_CASE("is_prime_bounded: the constant-one function is prime within its window") {
  SearchBound bound{10, 5};
  auto rs = make_instance(InstanceKind::Restricted, InstanceParams{4, 10, 2, 8});
  Element f = make_seq(InstanceKind::Restricted, 1, {});
  CHECK(is_prime_bounded(*rs, f, 3, bound).yes());
}

TEST_CASE("cancellation and divides-exactness on sampled windows") {
  Rng rng(7);
  for (auto kind : {InstanceKind::Free, InstanceKind::QPlus, InstanceKind::Harmonic,
                    InstanceKind::Restricted}) {
    auto ins = make_instance(kind, InstanceParams{3, 6, 2, 8});
    SearchBound bound{6, 3};
    auto pool = ins->window_elements(bound);
    REQUIRE(!pool.empty());
    for (int t = 0; t < 30; ++t) {
      const Element& a = pool[rng.below(pool.size())];
      const Element& u = pool[rng.below(pool.size())];
      const Element& v = pool[rng.below(pool.size())];
      if (!(u == v)) CHECK_FALSE(ins->combine(a, u) == ins->combine(a, v));
      Element b = ins->combine(a, u);
      auto c = ins->divides(a, b);
      REQUIRE(c.has_value());
      CHECK(ins->combine(a, *c) == b);
    }
  }
}

TEST_CASE("prime implies irreducible where both are decided") {
  SearchBound bound{8, 4};
  for (auto kind : {InstanceKind::Free, InstanceKind::Restricted}) {
    auto ins = make_instance(kind, InstanceParams{3, 8, 2, 8});
    for (auto& a : ins->atom_candidates(bound)) {
      auto pr = is_prime_bounded(*ins, a, 3, bound);
      if (pr.yes()) CHECK(is_irreducible(*ins, a, bound).yes());
    }
  }
}

TEST_CASE("enumerate_atoms certifies every atom") {
  SearchBound bound{6, 4};
  auto free2 = make_instance(InstanceKind::Free, kTwoGens);
  auto atoms = enumerate_atoms(*free2, bound);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0] == make_free({{0, 1}}));
  CHECK(atoms[1] == make_free({{1, 1}}));
  for (auto& a : atoms) CHECK(is_irreducible(*free2, a, bound).yes());
}
