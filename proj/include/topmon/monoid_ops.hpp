#pragma once

#include "topmon/instance.hpp"
#include "topmon/verdict.hpp"

namespace topmon {

// Searches all 2-factor decompositions x = a*b with a, b non-units within the
// instance's enumerable window. Two factors suffice: any longer decomposition
// of a non-unit yields one by grouping, since a product of non-units is a
// non-unit in a reduced monoid. No carries the witness pair.
// The identity has no irreducibility status and is rejected.
BoundedVerdict is_irreducible(const Instance& ins, const Element& x, const SearchBound& bound);

// Enumerates products a_1...a_r, r <= max_factors, of window elements with
// divides(x, product); No carries a witness product none of whose factors is
// divisible by x, Yes means no witness within bounds.
BoundedVerdict is_prime_bounded(const Instance& ins, const Element& x, int max_factors,
                                const SearchBound& bound);

// All atoms representable within the window, each certified irreducible.
std::vector<Element> enumerate_atoms(const Instance& ins, const SearchBound& bound);

}  // namespace topmon
