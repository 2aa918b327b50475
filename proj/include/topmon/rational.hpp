#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace topmon {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt pow2(long long k) { return BigInt(1) << k; }

// 2^-k as an exact rational, k >= 0.
inline Rat dyadic(long long k) { return Rat(BigInt(1), pow2(k)); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// |a - b| < 2^-k, the open dyadic ball test used by the metric-like bases.
inline bool within_dyadic(const Rat& a, const Rat& b, long long k) {
  return rat_abs(a - b) < dyadic(k);
}

// Smallest k >= 0 with gap >= 2^-k, i.e. the first level at which a point
// whose distance from the target is `gap` falls outside the open ball.
// Returns nullopt for gap <= 0.
inline std::optional<long long> exclusion_level(const Rat& gap) {
  if (gap <= 0) return std::nullopt;
  long long k = 0;
  Rat r(1);
  while (gap < r) {
    r /= 2;
    ++k;
    if (k > 100000) return std::nullopt;  // degenerate input guard
  }
  return k;
}

std::string rat_to_string(const Rat& x);
std::optional<Rat> rat_from_string(const std::string& s);

}  // namespace topmon
