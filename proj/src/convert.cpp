#include "fsmr/automata.hpp"

#include "fsmr/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace fsmr {
namespace {

// Disambiguates a generated name that collides with one already issued
// (possible when original names contain ',' or braces).
std::string claim_name(std::string name, std::set<std::string>& used) {
    while (used.contains(name)) name += '\'';
    used.insert(name);
    return name;
}

}  // namespace

std::string subset_name(std::vector<std::string> members) {
    std::sort(members.begin(), members.end());
    std::string name = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0) name += ',';
        name += members[i];
    }
    name += '}';
    return name;
}

Dfa subset_construction(const Nfa& nfa) {
    const auto k = nfa.symbol_count();
    const StateId nfa_start = nfa.start();

    std::map<StateSet, StateId> index;
    std::vector<StateSet> subsets;
    std::vector<StateId> table;
    std::deque<StateId> queue;

    auto intern = [&](StateSet set) {
        const auto [it, inserted] = index.emplace(set, subsets.size());
        if (inserted) {
            subsets.push_back(std::move(set));
            queue.push_back(it->second);
        }
        return it->second;
    };

    intern(epsilon_closure(nfa, std::span(&nfa_start, 1)));
    while (!queue.empty()) {
        const StateId current = queue.front();
        queue.pop_front();
        for (std::size_t a = 0; a < k; ++a) {
            StateSet moved;
            for (const StateId s : subsets[current]) {
                const auto targets = nfa.targets(s, a);
                moved.insert(moved.end(), targets.begin(), targets.end());
            }
            std::sort(moved.begin(), moved.end());
            moved.erase(std::unique(moved.begin(), moved.end()), moved.end());
            const StateId target = intern(epsilon_closure(nfa, moved));
            // Rows are filled in discovery order, so `current` is always the next row.
            table.push_back(target);
        }
    }

    std::set<std::string> used;
    std::vector<std::string> names;
    std::vector<bool> accepting;
    for (const auto& set : subsets) {
        if (set.empty()) {
            names.push_back(claim_name(std::string(empty_subset_name), used));
        } else {
            std::vector<std::string> members;
            for (const StateId s : set) members.push_back(nfa.name(s));
            names.push_back(claim_name(subset_name(std::move(members)), used));
        }
        accepting.push_back(std::any_of(set.begin(), set.end(), [&](StateId s) { return nfa.is_accepting(s); }));
    }
    return Dfa(std::move(names), std::vector<Symbol>(nfa.alphabet().begin(), nfa.alphabet().end()), std::move(table), 0,
               std::move(accepting), nfa.title());
}

Dfa reachable_part(const Dfa& dfa) {
    const auto n = dfa.state_count();
    const auto k = dfa.symbol_count();
    std::vector<bool> reached(n, false);
    std::vector<StateId> pending{dfa.start()};
    reached[dfa.start()] = true;
    while (!pending.empty()) {
        const StateId s = pending.back();
        pending.pop_back();
        for (std::size_t a = 0; a < k; ++a) {
            const StateId t = dfa.next(s, a);
            if (!reached[t]) {
                reached[t] = true;
                pending.push_back(t);
            }
        }
    }

    std::vector<StateId> renumber(n, 0);
    std::vector<std::string> names;
    std::vector<bool> accepting;
    for (StateId s = 0; s < n; ++s) {
        if (!reached[s]) continue;
        renumber[s] = names.size();
        names.push_back(dfa.name(s));
        accepting.push_back(dfa.is_accepting(s));
    }
    std::vector<StateId> table;
    table.reserve(names.size() * k);
    for (StateId s = 0; s < n; ++s) {
        if (!reached[s]) continue;
        for (std::size_t a = 0; a < k; ++a) table.push_back(renumber[dfa.next(s, a)]);
    }
    return Dfa(std::move(names), std::vector<Symbol>(dfa.alphabet().begin(), dfa.alphabet().end()), std::move(table),
               renumber[dfa.start()], std::move(accepting), dfa.title());
}

Dfa minimize(const Dfa& input) {
    const Dfa dfa = reachable_part(input);
    const auto n = dfa.state_count();
    const auto k = dfa.symbol_count();

    // Moore refinement: split blocks by (own block, successor blocks) until
    // the block count stops growing. Block ids are assigned in order of first
    // member, so the final numbering follows declaration order.
    std::vector<std::size_t> block(n);
    std::size_t block_count = 0;
    {
        std::map<bool, std::size_t> initial;
        for (StateId s = 0; s < n; ++s) {
            const auto [it, inserted] = initial.emplace(dfa.is_accepting(s), initial.size());
            block[s] = it->second;
        }
        block_count = initial.size();
    }
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> signatures;
        std::vector<std::size_t> refined(n);
        for (StateId s = 0; s < n; ++s) {
            std::vector<std::size_t> signature;
            signature.reserve(k + 1);
            signature.push_back(block[s]);
            for (std::size_t a = 0; a < k; ++a) signature.push_back(block[dfa.next(s, a)]);
            refined[s] = signatures.emplace(std::move(signature), signatures.size()).first->second;
        }
        const bool stable = signatures.size() == block_count;
        block = std::move(refined);
        block_count = signatures.size();
        if (stable) break;
    }

    std::vector<std::vector<std::string>> members(block_count);
    std::vector<StateId> representative(block_count, n);
    for (StateId s = 0; s < n; ++s) {
        members[block[s]].push_back(dfa.name(s));
        if (representative[block[s]] == n) representative[block[s]] = s;
    }

    std::set<std::string> used;
    for (const auto& m : members) {
        if (m.size() == 1) used.insert(m.front());
    }
    std::vector<std::string> names;
    std::vector<bool> accepting;
    std::vector<StateId> table;
    for (std::size_t b = 0; b < block_count; ++b) {
        names.push_back(members[b].size() == 1 ? members[b].front() : claim_name(subset_name(members[b]), used));
        accepting.push_back(dfa.is_accepting(representative[b]));
        for (std::size_t a = 0; a < k; ++a) table.push_back(block[dfa.next(representative[b], a)]);
    }
    return Dfa(std::move(names), std::vector<Symbol>(dfa.alphabet().begin(), dfa.alphabet().end()), std::move(table),
               block[dfa.start()], std::move(accepting), dfa.title());
}

EquivalenceResult equivalent(const Dfa& a, const Dfa& b) {
    const auto k = a.symbol_count();
    std::vector<std::size_t> b_column(k);
    if (b.symbol_count() != k) throw AlphabetMismatch("machines have alphabets of different sizes");
    for (std::size_t i = 0; i < k; ++i) {
        const auto column = b.find_symbol(a.alphabet()[i]);
        if (!column) throw AlphabetMismatch("symbol '" + utf8::encode(a.alphabet()[i]) + "' is missing from one alphabet");
        b_column[i] = *column;
    }

    const auto nb = b.state_count();
    const auto pair_id = [nb](StateId x, StateId y) { return x * nb + y; };
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);

    struct Parent {
        std::size_t pair = unvisited;
        std::size_t symbol = 0;
    };
    std::vector<Parent> parent(a.state_count() * nb);
    std::vector<bool> seen(a.state_count() * nb, false);

    std::deque<std::pair<StateId, StateId>> queue;
    queue.emplace_back(a.start(), b.start());
    seen[pair_id(a.start(), b.start())] = true;
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        if (a.is_accepting(x) != b.is_accepting(y)) {
            std::u32string word;
            for (auto id = pair_id(x, y); parent[id].pair != unvisited; id = parent[id].pair) {
                word.push_back(a.alphabet()[parent[id].symbol]);
            }
            std::reverse(word.begin(), word.end());
            return {false, std::move(word)};
        }
        for (std::size_t s = 0; s < k; ++s) {
            const StateId nx = a.next(x, s);
            const StateId ny = b.next(y, b_column[s]);
            const auto id = pair_id(nx, ny);
            if (seen[id]) continue;
            seen[id] = true;
            parent[id] = {pair_id(x, y), s};
            queue.emplace_back(nx, ny);
        }
    }
    return {true, std::nullopt};
}

}  // namespace fsmr
