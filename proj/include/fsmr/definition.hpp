#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsmr {

enum class MachineKind { dfa, nfa };

/// Token that marks an epsilon move in the `delta:` block of an nfa document.
inline constexpr std::string_view epsilon_token = "epsilon";

/// One `from symbol -> to` line. An absent symbol is an epsilon move.
struct TransitionDecl {
    std::string from;
    std::optional<std::string> symbol;
    std::string to;

    bool operator==(const TransitionDecl&) const = default;
};

/// Syntactic capture of a `.fsm` document. Nothing here is checked against
/// the 5-tuple rules; that happens in validate_dfa / validate_nfa.
struct MachineDefinition {
    MachineKind kind = MachineKind::dfa;
    std::optional<std::string> title;
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::vector<TransitionDecl> transitions;
    std::string start;
    std::vector<std::string> accepting;

    bool operator==(const MachineDefinition&) const = default;
};

/// Parses a `.fsm` document:
///
///     kind: dfa
///     name: even number of a's        # optional
///     states: e o
///     alphabet: a b
///     start: e
///     accept: e
///     delta:
///       e a -> o
///       e b -> e
///
/// Field lines start in column 1, transition lines are indented. Several
/// targets after the arrow are expanded into one TransitionDecl each (nfa only).
/// Throws ParseError, DuplicateField or UnknownKind.
MachineDefinition parse_definition(std::string_view document);

/// Canonical rendering: fixed field order, one transition per line, LF endings.
std::string serialize_definition(const MachineDefinition& definition);

std::string_view to_string(MachineKind kind);

}  // namespace fsmr
