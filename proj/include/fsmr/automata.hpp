#pragma once

#include "fsmr/definition.hpp"
#include "fsmr/utf8.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fsmr {

/// Index of a state within its machine (declaration order).
using StateId = std::size_t;

/// Sorted, duplicate-free list of state indices.
using StateSet = std::vector<StateId>;

/// Deterministic finite automaton with a total transition function.
///
/// Immutable once constructed; the constructor enforces every invariant of
/// the 5-tuple (non-empty, duplicate-free states and alphabet, total table,
/// start and accepting states in range).
class Dfa {
public:
    /// `table[state * alphabet.size() + symbol_index]` is the target state.
    Dfa(std::vector<std::string> states, std::vector<Symbol> alphabet, std::vector<StateId> table,
        StateId start, std::vector<bool> accepting, std::optional<std::string> title = std::nullopt);

    std::span<const std::string> states() const noexcept { return states_; }
    std::span<const Symbol> alphabet() const noexcept { return alphabet_; }
    std::size_t state_count() const noexcept { return states_.size(); }
    std::size_t symbol_count() const noexcept { return alphabet_.size(); }

    const std::string& name(StateId state) const { return states_.at(state); }
    StateId start() const noexcept { return start_; }
    bool is_accepting(StateId state) const { return accepting_.at(state); }
    const std::optional<std::string>& title() const noexcept { return title_; }

    /// Target of `state` on the symbol at `symbol_index` in alphabet().
    StateId next(StateId state, std::size_t symbol_index) const {
        return table_[state * alphabet_.size() + symbol_index];
    }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<std::size_t> find_symbol(Symbol symbol) const;

    /// Name used to label traces and rendered output.
    std::string machine_id() const { return title_.value_or("dfa"); }

private:
    std::vector<std::string> states_;
    std::vector<Symbol> alphabet_;
    std::vector<StateId> table_;
    StateId start_;
    std::vector<bool> accepting_;
    std::optional<std::string> title_;
};

/// One nondeterministic move; an absent symbol index is an epsilon move.
struct NfaEdge {
    StateId from;
    std::optional<std::size_t> symbol;
    StateId to;
};

/// Nondeterministic finite automaton with epsilon moves.
class Nfa {
public:
    Nfa(std::vector<std::string> states, std::vector<Symbol> alphabet, std::span<const NfaEdge> edges,
        StateId start, std::vector<bool> accepting, std::optional<std::string> title = std::nullopt);

    std::span<const std::string> states() const noexcept { return states_; }
    std::span<const Symbol> alphabet() const noexcept { return alphabet_; }
    std::size_t state_count() const noexcept { return states_.size(); }
    std::size_t symbol_count() const noexcept { return alphabet_.size(); }

    const std::string& name(StateId state) const { return states_.at(state); }
    StateId start() const noexcept { return start_; }
    bool is_accepting(StateId state) const { return accepting_.at(state); }
    const std::optional<std::string>& title() const noexcept { return title_; }

    /// Sorted targets of `state` on the symbol at `symbol_index`.
    std::span<const StateId> targets(StateId state, std::size_t symbol_index) const {
        return moves_[state * (alphabet_.size() + 1) + symbol_index];
    }
    std::span<const StateId> epsilon_targets(StateId state) const {
        return moves_[state * (alphabet_.size() + 1) + alphabet_.size()];
    }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<std::size_t> find_symbol(Symbol symbol) const;

    /// All edges in (from, symbol, to) order with epsilon last per state.
    std::vector<NfaEdge> edges() const;

private:
    std::vector<std::string> states_;
    std::vector<Symbol> alphabet_;
    std::vector<std::vector<StateId>> moves_;
    StateId start_;
    std::vector<bool> accepting_;
    std::optional<std::string> title_;
};

// ---------------------------------------------------------------------------
// Definitions <-> machines

/// Builds a Dfa from a `kind: dfa` definition, preserving declaration order.
/// Throws MissingTransition, UnknownState, UnknownSymbol, StartNotInStates,
/// DuplicateName, InvalidName, AmbiguousTransition or KindMismatch.
Dfa validate_dfa(const MachineDefinition& definition);

/// Builds an Nfa from a definition of either kind.
Nfa validate_nfa(const MachineDefinition& definition);

MachineDefinition to_definition(const Dfa& dfa);
MachineDefinition to_definition(const Nfa& nfa);

/// Routes every missing transition of a `kind: dfa` definition to a fresh
/// non-accepting trap state that loops on every symbol. A definition that is
/// already total comes back without a trap. Throws TrapNameCollision when
/// `trap_name` is already a state.
Dfa complete(const MachineDefinition& definition, std::string_view trap_name);

// ---------------------------------------------------------------------------
// Simulation

enum class Verdict { accepted, rejected };

struct TraceStep {
    std::string from;
    Symbol symbol;
    std::string to;

    bool operator==(const TraceStep&) const = default;
};

/// Every configuration one run passes through.
struct SimulationTrace {
    std::string machine_id;
    std::u32string input;
    std::vector<TraceStep> steps;     ///< one per input symbol
    std::vector<std::string> visited; ///< input.size() + 1 states, starting at start
    Verdict verdict = Verdict::rejected;

    bool operator==(const SimulationTrace&) const = default;
};

/// δ(state, symbol) by name. Throws UnknownState / UnknownSymbol.
std::string step(const Dfa& dfa, std::string_view state, Symbol symbol);

/// Runs the machine; throws InvalidInputSymbol before doing any work if a
/// symbol is outside the alphabet.
SimulationTrace simulate(const Dfa& dfa, std::u32string_view input);

/// UTF-8 convenience overload. Malformed UTF-8 is reported as InvalidInputSymbol.
SimulationTrace simulate(const Dfa& dfa, std::string_view utf8_input);

bool accepts(const Dfa& dfa, std::u32string_view input);
bool accepts(const Dfa& dfa, std::string_view utf8_input);

/// Decodes UTF-8 input, throwing InvalidInputSymbol at the first bad byte.
std::u32string decode_input(std::string_view utf8_input);

/// Smallest superset of `seed` closed under epsilon moves.
StateSet epsilon_closure(const Nfa& nfa, std::span<const StateId> seed);

/// Name-based form; throws UnknownState.
std::vector<std::string> epsilon_closure(const Nfa& nfa, const std::vector<std::string>& seed);

/// Set-simulation: element 0 is closure({start}), element i+1 the closure of
/// the moves on input[i]. Throws InvalidInputSymbol.
std::vector<StateSet> simulate_nfa(const Nfa& nfa, std::u32string_view input);

bool nfa_accepts(const Nfa& nfa, std::u32string_view input);

// ---------------------------------------------------------------------------
// Conversions

/// Canonical "{a,b,c}" name with members sorted by scalar value.
std::string subset_name(std::vector<std::string> members);

/// Name of the empty subset, which becomes a trap state.
inline constexpr std::string_view empty_subset_name = "∅";

/// Subset construction. Only reachable subsets are emitted, in breadth-first
/// discovery order from the start subset with symbols taken in alphabet order.
Dfa subset_construction(const Nfa& nfa);

/// The sub-machine reachable from start, keeping declaration order.
Dfa reachable_part(const Dfa& dfa);

/// Minimal equivalent DFA by partition refinement after removing unreachable
/// states. Singleton blocks keep their name; merged blocks are named "{a,b}".
Dfa minimize(const Dfa& dfa);

struct EquivalenceResult {
    bool equivalent = true;
    /// Shortest distinguishing word when not equivalent.
    std::optional<std::u32string> counterexample;
};

/// Breadth-first search of the product automaton. Throws AlphabetMismatch
/// unless both machines have the same alphabet (order may differ).
EquivalenceResult equivalent(const Dfa& a, const Dfa& b);

}  // namespace fsmr
