#pragma once

#include "fsmr/automata.hpp"
#include "fsmr/utf8.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fsmr {

enum class RegexKind { empty_string, literal, concat, alternation, star };

/// Regular-expression syntax tree. Concat and alternation hold two operands,
/// star holds one, leaves hold none.
struct Regex {
    RegexKind kind = RegexKind::empty_string;
    Symbol symbol = 0;  ///< literal only
    std::vector<Regex> operands;

    static Regex epsilon();
    static Regex literal(Symbol symbol);
    static Regex concat(Regex left, Regex right);
    static Regex alternation(Regex left, Regex right);
    static Regex star(Regex inner);

    bool operator==(const Regex&) const = default;
};

/// Parses `|`, `*`, parentheses and implicit concatenation with precedence
/// star > concat > union. `ε` denotes the empty string and `\` escapes the
/// next character. Every other scalar is a literal. Throws RegexSyntaxError
/// with a 0-based scalar position.
Regex parse_regex(std::string_view text);

/// Prefix rendering, e.g. `Union(Concat(a,b),Star(c))`.
std::string to_string(const Regex& regex);

/// Literal symbols in ascending scalar order.
std::vector<Symbol> regex_symbols(const Regex& regex);

/// Thompson construction. The result has exactly one accepting state with no
/// outgoing moves; states are named q0, q1, ... in breadth-first order from
/// the start. The alphabet is the regex's literals plus `extra_alphabet`,
/// sorted by scalar value.
Nfa regex_to_nfa(const Regex& regex, std::span<const Symbol> extra_alphabet = {});

}  // namespace fsmr
