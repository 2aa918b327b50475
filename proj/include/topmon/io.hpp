#pragma once

#include <optional>
#include <string>

#include "topmon/factorisation.hpp"
#include "topmon/instance.hpp"
#include "topmon/stream.hpp"

namespace topmon {

// Canonical textual encodings. print/parse round-trip exactly:
//   free       x1^2*x3            identity: 1
//   qplus      p/q (or p)
//   harmonic   [0:1, 3:2]         identity: []
//   series     {x1^2*x2:3/4, x1:1}   identity: 1, zero-like: {}
//   sequences  base=1; delta={0:+1}
//   integers   plain integer
std::string print_element(const Instance& ins, const Element& x);
std::optional<Element> parse_element(const Instance& ins, const std::string& text,
                                     std::string* err = nullptr);

// Exponent maps over the declared atom window:
//   {a0:2, a3:1}   |   base=ones; delta={a0:+1}   |   base=2*ones; delta={}
std::string print_exponent_map(const ExponentMap& m);
std::optional<ExponentMap> parse_exponent_map(const std::string& text,
                                              std::string* err = nullptr);

// Stream rules: geometric(1/2), chi-all, chi-from(1), constant(<elem>),
// harmonic-from(2), integers-from(1), integers-paired,
// explicit[<elem>; <elem>^3; ...], with an optional " | squares" /
// " | evens" / " | odds" / " | keep{1,4}" / " | drop{0}" selector suffix.
std::string print_stream_rule(const Instance& ins, const FactorStream& s);
std::optional<FactorStream> parse_stream_rule(const Instance& ins, const std::string& text,
                                              std::string* err = nullptr);

}  // namespace topmon
