#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topmon/convergence.hpp"
#include "topmon/instance.hpp"
#include "topmon/stream.hpp"

namespace topmon {

// Atom slot in the fixed enumeration order: coordinate atoms by index first,
// special atoms (e.g. the constant-one sequence) last.
struct AtomKey {
  bool special = false;
  long long index = 0;
  auto operator<=>(const AtomKey&) const = default;
};

// Element of N^{A(H)} restricted to the encodable shapes: finite support plus
// an optional cofinite base over the coordinate-atom family. value(coord i) =
// base + coord_off(i); value(special s) = special_val(s). All values finite
// and >= 0; canonical form stores no zero offsets.
struct ExponentMap {
  long long base = 0;
  std::map<long long, long long> coord_off;   // coordinate atom index -> offset from base
  std::map<long long, long long> special_val; // special atom index -> value

  long long coord_value(long long i) const {
    auto it = coord_off.find(i);
    return base + (it == coord_off.end() ? 0 : it->second);
  }
  long long special_value(long long s) const {
    auto it = special_val.find(s);
    return it == special_val.end() ? 0 : it->second;
  }
  long long value(const AtomKey& k) const {
    return k.special ? special_value(k.index) : coord_value(k.index);
  }
  bool finitely_supported() const { return base == 0; }
  bool is_zero() const { return base == 0 && coord_off.empty() && special_val.empty(); }
  long long support_size_within(long long window) const;

  void normalize();  // drop zero offsets/values; validates non-negativity

  bool operator==(const ExponentMap&) const = default;
};

ExponentMap exponent_map_add(const ExponentMap& a, const ExponentMap& b);
// a - b when b <= a componentwise (within any window; bases compare too).
std::optional<ExponentMap> exponent_map_sub(const ExponentMap& a, const ExponentMap& b);
// Componentwise v <= w over the coordinate family and specials.
bool exponent_divides(const ExponentMap& v, const ExponentMap& w);

ExponentMap all_ones_map();                       // base 1, no offsets
ExponentMap chi_key(const AtomKey& k);            // unit coordinate map

// Fold the cofinite base into explicit offsets when the coordinate family is
// finite; validates that the map fits the universe.
ExponentMap canonical_for(const AtomUniverse& u, ExponentMap m);

// All finitely supported maps over the window atoms with total exponent
// 1..max_total, graded order.
std::vector<ExponentMap> enumerate_window_maps(const AtomUniverse& u, long long max_total);

// The unit coordinate map of an atom; the atom must belong to the universe.
ExponentMap chi(const AtomUniverse& u, const Element& atom);
std::optional<AtomKey> atom_key_of(const AtomUniverse& u, const Element& atom);
Element atom_of_key(const AtomUniverse& u, const AtomKey& k);

// Finitely supported factorisation homomorphism: prod a^{m(a)}.
Element pi_finite(const Instance& ins, const AtomUniverse& u, const ExponentMap& m);

// --- Z(H) membership --------------------------------------------------------

enum class ZVerdict { InZ, NotInZ, Inconclusive };
std::string z_verdict_name(ZVerdict v);

struct ZMembershipReport {
  ZVerdict verdict = ZVerdict::Inconclusive;
  ConvergenceReport conv;
  std::optional<Element> limit;
  std::string note;

  bool in_z() const { return verdict == ZVerdict::InZ; }
};

// Builds the atom-power stream of m and verifies convergence against the
// instance's candidates. InZ returns the verified limit.
ZMembershipReport pi_bar(const Instance& ins, const AtomUniverse& u, const ExponentMap& m,
                         const VerifyParams& p);

FactorStream atom_power_stream(const Instance& ins, const AtomUniverse& u, const ExponentMap& m,
                               const SearchBound& b);

// Componentwise sum with an InZ confirmation and the homomorphism check
// pi_bar(f+g) = combine(pi_bar(f), pi_bar(g)) at the tested levels.
struct ZhAddResult {
  ExponentMap sum;
  ZMembershipReport membership;
  bool homomorphism_ok = false;
};
ZhAddResult zh_add(const Instance& ins, const AtomUniverse& u, const ExponentMap& f,
                   const ExponentMap& g, const VerifyParams& p);

// d <= c componentwise with c InZ: PASS iff d is verified InZ.
StructuredReport order_ideal_check(const Instance& ins, const AtomUniverse& u,
                                   const ExponentMap& c, const ExponentMap& d,
                                   const VerifyParams& p);

// Net convergence in the initial topology of Z(H): pi_bar images converge in
// H at the tested levels and every windowed projection stabilizes.
struct ZNetReport {
  CheckVerdict verdict = CheckVerdict::Inconclusive;
  bool eventually_constant = false;
  std::string note;
};
ZNetReport zh_net_convergence(const Instance& ins, const AtomUniverse& u,
                              const std::vector<ExponentMap>& seq, const ExponentMap& limit,
                              const VerifyParams& p);

// Atoms of Z(H) are exactly the unit coordinate maps: each chi(a) is
// irreducible and every enumerated map with support >= 2 (or an exponent
// >= 2) splits.
StructuredReport zh_atoms_check(const Instance& ins, const AtomUniverse& u, long long degree,
                                const VerifyParams& p);

// Unique factorisation of b into window atoms: recovers exponents as
// max { r : a^r | b } and compares all discovered factorisations.
struct FactorisationReport {
  CheckVerdict verdict = CheckVerdict::Inconclusive;  // Pass = unique
  std::vector<ExponentMap> factorisations;
  std::string note;
};
FactorisationReport unique_factorisation_check(const Instance& ins, const Element& b,
                                               const SearchBound& bound, const VerifyParams& p);

// Z(free)-style direct check on exponent maps.
FactorisationReport zh_unique_factorisation_check(const Instance& ins, const AtomUniverse& u,
                                                  const ExponentMap& m, const VerifyParams& p);

// Topological primality over generated window streams plus user streams:
// whenever x divides a verified limit it must divide some factor.
BoundedVerdict topologically_prime_check(const Instance& ins, const Element& x,
                                         const std::vector<FactorStream>& extra_streams,
                                         const SearchBound& bound, const VerifyParams& p);

// Bounded topological irreducibility: no convergent stream with all factors
// different from x evaluates to x within the searched streams.
BoundedVerdict topologically_irreducible_check(const Instance& ins, const Element& x,
                                               const SearchBound& bound, const VerifyParams& p);

// Relabeling a -> chi(a); the section into Z(Z(H)).
ExponentMap xi(const ExponentMap& m);

// pi_bar_{Z(H)}(Xi(m)) = m plus the bidirectional net equivalence on sampled
// sequences.
StructuredReport xi_section_check(const Instance& ins, const AtomUniverse& u,
                                  const ExponentMap& m, const VerifyParams& p);

}  // namespace topmon
