#include "fsmr/automata.hpp"

#include "fsmr/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>

namespace fsmr {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

void check_state_name(const std::string& name) {
    if (name.empty()) throw InvalidName(name, "state names must be non-empty");
    if (is_blank(name.front()) || is_blank(name.back())) {
        throw InvalidName(name, "state names must not start or end with whitespace");
    }
    if (name.find('\n') != std::string::npos) throw InvalidName(name, "state names must not contain line breaks");
}

void check_states(const std::vector<std::string>& states) {
    if (states.empty()) throw ValidationError("a machine needs at least one state");
    std::set<std::string_view> seen;
    for (const auto& s : states) {
        check_state_name(s);
        if (!seen.insert(s).second) throw DuplicateName(s);
    }
}

void check_alphabet(const std::vector<Symbol>& alphabet) {
    std::set<Symbol> seen;
    for (const Symbol a : alphabet) {
        if (a > 0x10FFFF || (a >= 0xD800 && a <= 0xDFFF)) {
            throw InvalidName(fmt::format("U+{:04X}", static_cast<unsigned>(a)), "not a Unicode scalar value");
        }
        if (!seen.insert(a).second) throw DuplicateName(utf8::encode(a));
    }
}

std::optional<std::size_t> index_of(std::span<const std::string> names, std::string_view name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

std::optional<std::size_t> index_of(std::span<const Symbol> alphabet, Symbol symbol) {
    const auto it = std::find(alphabet.begin(), alphabet.end(), symbol);
    if (it == alphabet.end()) return std::nullopt;
    return static_cast<std::size_t>(it - alphabet.begin());
}

// Name-level checks shared by validate_dfa, validate_nfa and complete.
struct ResolvedNames {
    std::vector<std::string> states;
    std::vector<Symbol> alphabet;
    std::unordered_map<std::string, StateId> state_index;
    std::map<std::string, std::size_t> symbol_index;
    StateId start = 0;
    std::vector<bool> accepting;

    StateId state(const std::string& name) const {
        const auto it = state_index.find(name);
        if (it == state_index.end()) throw UnknownState(name);
        return it->second;
    }
    std::size_t symbol(const std::string& text) const {
        const auto it = symbol_index.find(text);
        if (it == symbol_index.end()) throw UnknownSymbol(text);
        return it->second;
    }
};

ResolvedNames resolve(const MachineDefinition& d) {
    ResolvedNames r;
    check_states(d.states);
    r.states = d.states;
    for (std::size_t i = 0; i < d.states.size(); ++i) r.state_index.emplace(d.states[i], i);

    for (const auto& text : d.alphabet) {
        const auto scalar = utf8::single_scalar(text);
        if (!scalar) throw InvalidName(text, "a symbol must be exactly one Unicode scalar value");
        if (!r.symbol_index.emplace(text, r.alphabet.size()).second) throw DuplicateName(text);
        r.alphabet.push_back(*scalar);
    }

    const auto start = r.state_index.find(d.start);
    if (start == r.state_index.end()) throw StartNotInStates(d.start);
    r.start = start->second;

    r.accepting.assign(r.states.size(), false);
    std::set<std::string_view> seen;
    for (const auto& name : d.accepting) {
        if (!seen.insert(name).second) throw DuplicateName(name);
        r.accepting[r.state(name)] = true;
    }
    return r;
}

constexpr StateId no_state = static_cast<StateId>(-1);

// Table with no_state holes for undefined (state, symbol) pairs.
std::vector<StateId> partial_table(const MachineDefinition& d, const ResolvedNames& r) {
    std::vector<StateId> table(r.states.size() * r.alphabet.size(), no_state);
    for (const auto& t : d.transitions) {
        const auto from = r.state(t.from);
        if (!t.symbol) throw UnknownSymbol(std::string(epsilon_token));
        const auto symbol = r.symbol(*t.symbol);
        const auto to = r.state(t.to);
        auto& cell = table[from * r.alphabet.size() + symbol];
        if (cell != no_state) throw AmbiguousTransition(t.from, *t.symbol);
        cell = to;
    }
    return table;
}

}  // namespace

// ---------------------------------------------------------------------------

Dfa::Dfa(std::vector<std::string> states, std::vector<Symbol> alphabet, std::vector<StateId> table, StateId start,
         std::vector<bool> accepting, std::optional<std::string> title)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      table_(std::move(table)),
      start_(start),
      accepting_(std::move(accepting)),
      title_(std::move(title)) {
    check_states(states_);
    if (alphabet_.empty()) throw ValidationError("a DFA needs a non-empty alphabet");
    check_alphabet(alphabet_);
    if (table_.size() != states_.size() * alphabet_.size()) {
        throw ValidationError("transition table must have one entry per (state, symbol) pair");
    }
    for (const StateId target : table_) {
        if (target >= states_.size()) throw UnknownState(fmt::format("#{}", target));
    }
    if (start_ >= states_.size()) throw StartNotInStates(fmt::format("#{}", start_));
    if (accepting_.size() != states_.size()) throw ValidationError("accepting flags must cover every state");
}

std::optional<StateId> Dfa::find_state(std::string_view name) const { return index_of(states_, name); }

std::optional<std::size_t> Dfa::find_symbol(Symbol symbol) const { return index_of(alphabet_, symbol); }

Nfa::Nfa(std::vector<std::string> states, std::vector<Symbol> alphabet, std::span<const NfaEdge> edges, StateId start,
         std::vector<bool> accepting, std::optional<std::string> title)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      start_(start),
      accepting_(std::move(accepting)),
      title_(std::move(title)) {
    check_states(states_);
    check_alphabet(alphabet_);
    if (start_ >= states_.size()) throw StartNotInStates(fmt::format("#{}", start_));
    if (accepting_.size() != states_.size()) throw ValidationError("accepting flags must cover every state");

    const auto columns = alphabet_.size() + 1;
    moves_.resize(states_.size() * columns);
    for (const auto& e : edges) {
        if (e.from >= states_.size()) throw UnknownState(fmt::format("#{}", e.from));
        if (e.to >= states_.size()) throw UnknownState(fmt::format("#{}", e.to));
        if (e.symbol && *e.symbol >= alphabet_.size()) throw UnknownSymbol(fmt::format("#{}", *e.symbol));
        moves_[e.from * columns + e.symbol.value_or(alphabet_.size())].push_back(e.to);
    }
    for (auto& targets : moves_) {
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    }
}

std::optional<StateId> Nfa::find_state(std::string_view name) const { return index_of(states_, name); }

std::optional<std::size_t> Nfa::find_symbol(Symbol symbol) const { return index_of(alphabet_, symbol); }

std::vector<NfaEdge> Nfa::edges() const {
    std::vector<NfaEdge> out;
    for (StateId s = 0; s < states_.size(); ++s) {
        for (std::size_t a = 0; a < alphabet_.size(); ++a) {
            for (const StateId t : targets(s, a)) out.push_back({s, a, t});
        }
        for (const StateId t : epsilon_targets(s)) out.push_back({s, std::nullopt, t});
    }
    return out;
}

// ---------------------------------------------------------------------------

Dfa validate_dfa(const MachineDefinition& d) {
    if (d.kind != MachineKind::dfa) throw KindMismatch("expected a 'kind: dfa' definition");
    const auto r = resolve(d);
    if (r.alphabet.empty()) throw ValidationError("a DFA needs a non-empty alphabet");
    const auto table = partial_table(d, r);
    for (StateId s = 0; s < r.states.size(); ++s) {
        for (std::size_t a = 0; a < r.alphabet.size(); ++a) {
            if (table[s * r.alphabet.size() + a] == no_state) {
                throw MissingTransition(r.states[s], utf8::encode(r.alphabet[a]));
            }
        }
    }
    return Dfa(r.states, r.alphabet, table, r.start, r.accepting, d.title);
}

Nfa validate_nfa(const MachineDefinition& d) {
    const auto r = resolve(d);
    std::vector<NfaEdge> edges;
    edges.reserve(d.transitions.size());
    for (const auto& t : d.transitions) {
        std::optional<std::size_t> symbol;
        if (t.symbol) symbol = r.symbol(*t.symbol);
        edges.push_back({r.state(t.from), symbol, r.state(t.to)});
    }
    return Nfa(r.states, r.alphabet, edges, r.start, r.accepting, d.title);
}

Dfa complete(const MachineDefinition& d, std::string_view trap_name) {
    if (d.kind != MachineKind::dfa) throw KindMismatch("only 'kind: dfa' definitions can be completed");
    if (std::find(d.states.begin(), d.states.end(), trap_name) != d.states.end()) {
        throw TrapNameCollision(std::string(trap_name));
    }
    auto r = resolve(d);
    if (r.alphabet.empty()) throw ValidationError("a DFA needs a non-empty alphabet");
    auto table = partial_table(d, r);
    if (std::find(table.begin(), table.end(), no_state) == table.end()) {
        return Dfa(r.states, r.alphabet, table, r.start, r.accepting, d.title);
    }

    const StateId trap = r.states.size();
    r.states.emplace_back(trap_name);
    r.accepting.push_back(false);
    for (auto& cell : table) {
        if (cell == no_state) cell = trap;
    }
    table.insert(table.end(), r.alphabet.size(), trap);
    return Dfa(r.states, r.alphabet, table, r.start, r.accepting, d.title);
}

namespace {

template <typename Machine>
MachineDefinition definition_skeleton(const Machine& m, MachineKind kind) {
    MachineDefinition d;
    d.kind = kind;
    d.title = m.title();
    d.states.assign(m.states().begin(), m.states().end());
    for (const Symbol a : m.alphabet()) d.alphabet.push_back(utf8::encode(a));
    d.start = m.name(m.start());
    for (StateId s = 0; s < m.state_count(); ++s) {
        if (m.is_accepting(s)) d.accepting.push_back(m.name(s));
    }
    return d;
}

}  // namespace

MachineDefinition to_definition(const Dfa& dfa) {
    auto d = definition_skeleton(dfa, MachineKind::dfa);
    for (StateId s = 0; s < dfa.state_count(); ++s) {
        for (std::size_t a = 0; a < dfa.symbol_count(); ++a) {
            d.transitions.push_back({dfa.name(s), d.alphabet[a], dfa.name(dfa.next(s, a))});
        }
    }
    return d;
}

MachineDefinition to_definition(const Nfa& nfa) {
    auto d = definition_skeleton(nfa, MachineKind::nfa);
    for (const auto& e : nfa.edges()) {
        std::optional<std::string> symbol;
        if (e.symbol) symbol = d.alphabet[*e.symbol];
        d.transitions.push_back({nfa.name(e.from), symbol, nfa.name(e.to)});
    }
    return d;
}

}  // namespace fsmr
