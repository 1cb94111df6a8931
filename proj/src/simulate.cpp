#include "fsmr/automata.hpp"

#include "fsmr/errors.hpp"

#include <algorithm>

namespace fsmr {

std::u32string decode_input(std::string_view utf8_input) {
    utf8::DecodeFailure failure{};
    auto decoded = utf8::decode(utf8_input, &failure);
    if (!decoded) throw InvalidInputSymbol(failure.scalar_index, "<invalid UTF-8>");
    return std::move(*decoded);
}

std::string step(const Dfa& dfa, std::string_view state, Symbol symbol) {
    const auto from = dfa.find_state(state);
    if (!from) throw UnknownState(std::string(state));
    const auto column = dfa.find_symbol(symbol);
    if (!column) throw UnknownSymbol(utf8::encode(symbol));
    return dfa.name(dfa.next(*from, *column));
}

SimulationTrace simulate(const Dfa& dfa, std::u32string_view input) {
    std::vector<std::size_t> columns;
    columns.reserve(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const auto column = dfa.find_symbol(input[i]);
        if (!column) throw InvalidInputSymbol(i, utf8::encode(input[i]));
        columns.push_back(*column);
    }

    SimulationTrace trace;
    trace.machine_id = dfa.machine_id();
    trace.input = std::u32string(input);
    trace.steps.reserve(input.size());
    trace.visited.reserve(input.size() + 1);

    StateId current = dfa.start();
    trace.visited.push_back(dfa.name(current));
    for (std::size_t i = 0; i < input.size(); ++i) {
        const StateId next = dfa.next(current, columns[i]);
        trace.steps.push_back({dfa.name(current), input[i], dfa.name(next)});
        trace.visited.push_back(dfa.name(next));
        current = next;
    }
    trace.verdict = dfa.is_accepting(current) ? Verdict::accepted : Verdict::rejected;
    return trace;
}

SimulationTrace simulate(const Dfa& dfa, std::string_view utf8_input) { return simulate(dfa, decode_input(utf8_input)); }

bool accepts(const Dfa& dfa, std::u32string_view input) { return simulate(dfa, input).verdict == Verdict::accepted; }

bool accepts(const Dfa& dfa, std::string_view utf8_input) { return accepts(dfa, decode_input(utf8_input)); }

StateSet epsilon_closure(const Nfa& nfa, std::span<const StateId> seed) {
    std::vector<bool> in_closure(nfa.state_count(), false);
    std::vector<StateId> pending;
    for (const StateId s : seed) {
        if (s >= nfa.state_count()) throw UnknownState("#" + std::to_string(s));
        if (!in_closure[s]) {
            in_closure[s] = true;
            pending.push_back(s);
        }
    }
    while (!pending.empty()) {
        const StateId s = pending.back();
        pending.pop_back();
        for (const StateId t : nfa.epsilon_targets(s)) {
            if (!in_closure[t]) {
                in_closure[t] = true;
                pending.push_back(t);
            }
        }
    }
    StateSet closure;
    for (StateId s = 0; s < in_closure.size(); ++s) {
        if (in_closure[s]) closure.push_back(s);
    }
    return closure;
}

std::vector<std::string> epsilon_closure(const Nfa& nfa, const std::vector<std::string>& seed) {
    StateSet ids;
    for (const auto& name : seed) {
        const auto id = nfa.find_state(name);
        if (!id) throw UnknownState(name);
        ids.push_back(*id);
    }
    std::vector<std::string> names;
    for (const StateId s : epsilon_closure(nfa, ids)) names.push_back(nfa.name(s));
    return names;
}

std::vector<StateSet> simulate_nfa(const Nfa& nfa, std::u32string_view input) {
    std::vector<std::size_t> columns;
    columns.reserve(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const auto column = nfa.find_symbol(input[i]);
        if (!column) throw InvalidInputSymbol(i, utf8::encode(input[i]));
        columns.push_back(*column);
    }

    std::vector<StateSet> sets;
    sets.reserve(input.size() + 1);
    const StateId start = nfa.start();
    sets.push_back(epsilon_closure(nfa, std::span(&start, 1)));
    for (const std::size_t column : columns) {
        StateSet moved;
        for (const StateId s : sets.back()) {
            const auto targets = nfa.targets(s, column);
            moved.insert(moved.end(), targets.begin(), targets.end());
        }
        std::sort(moved.begin(), moved.end());
        moved.erase(std::unique(moved.begin(), moved.end()), moved.end());
        sets.push_back(epsilon_closure(nfa, moved));
    }
    return sets;
}

bool nfa_accepts(const Nfa& nfa, std::u32string_view input) {
    const auto sets = simulate_nfa(nfa, input);
    const auto& last = sets.back();
    return std::any_of(last.begin(), last.end(), [&](StateId s) { return nfa.is_accepting(s); });
}

}  // namespace fsmr
