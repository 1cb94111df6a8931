#pragma once

#include "fsmr/automata.hpp"
#include "fsmr/definition.hpp"

#include <string_view>

namespace fixtures {

inline constexpr std::string_view even_a_document = R"(kind: dfa
name: even number of a's        # optional
states: e o
alphabet: a b
start: e
accept: e
delta:
  e a -> o
  e b -> e
  o a -> e
  o b -> o
)";

inline constexpr std::string_view odd_a_document = R"(kind: dfa
states: e o
alphabet: a b
start: e
accept: o
delta:
  e a -> o
  e b -> e
  o a -> e
  o b -> o
)";

// Only δ(q2, c) = q0 is taken from the figure; the rest is filler that keeps
// the table total.
inline constexpr std::string_view figure_document = R"(kind: dfa
name: figure
states: q0 q1 q2
alphabet: a b c
start: q0
accept: q2
delta:
  q0 a -> q1
  q0 b -> q0
  q0 c -> q0
  q1 a -> q1
  q1 b -> q2
  q1 c -> q0
  q2 a -> q1
  q2 b -> q2
  q2 c -> q0
)";

// "contains ab"
inline constexpr std::string_view contains_ab_document = R"(kind: nfa
states: s0 s1 s2
alphabet: a b
start: s0
accept: s2
delta:
  s0 a -> s0 s1
  s0 b -> s0
  s1 b -> s2
  s2 a -> s2
  s2 b -> s2
)";

inline fsmr::Dfa even_a() { return fsmr::validate_dfa(fsmr::parse_definition(even_a_document)); }
inline fsmr::Dfa odd_a() { return fsmr::validate_dfa(fsmr::parse_definition(odd_a_document)); }
inline fsmr::Dfa figure() { return fsmr::validate_dfa(fsmr::parse_definition(figure_document)); }
inline fsmr::Nfa contains_ab() { return fsmr::validate_nfa(fsmr::parse_definition(contains_ab_document)); }

}  // namespace fixtures
