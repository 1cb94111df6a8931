#pragma once

// Reference implementations used only by the tests. They work on plain
// integer tables and share no code with the library.

#include "fsmr/automata.hpp"
#include "fsmr/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

namespace oracle {

struct RawDfa {
    int n = 0;
    int k = 0;
    std::vector<int> delta;  // delta[s * k + a]
    int start = 0;
    std::vector<bool> accepting;

    int next(int s, int a) const { return delta[static_cast<std::size_t>(s * k + a)]; }
};

struct RawEdge {
    int from;
    int symbol;  // -1 is epsilon
    int to;
};

struct RawNfa {
    int n = 0;
    int k = 0;
    std::vector<RawEdge> edges;
    int start = 0;
    std::vector<bool> accepting;
};

inline std::u32string letters(int k) {
    std::u32string out;
    for (int i = 0; i < k; ++i) out.push_back(static_cast<char32_t>(U'a' + i));
    return out;
}

inline std::string state_name(int i) { return "s" + std::to_string(i); }

/// Every word over the first k letters with length <= max_len, shortest first.
inline std::vector<std::u32string> all_words(int k, int max_len) {
    std::vector<std::u32string> words{U""};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        const std::size_t end = words.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (int a = 0; a < k; ++a) words.push_back(words[i] + static_cast<char32_t>(U'a' + a));
        }
        begin = end;
    }
    return words;
}

inline RawDfa random_dfa(std::mt19937& rng, int max_states, int max_symbols) {
    RawDfa d;
    d.n = std::uniform_int_distribution<int>(1, max_states)(rng);
    d.k = std::uniform_int_distribution<int>(1, max_symbols)(rng);
    std::uniform_int_distribution<int> pick(0, d.n - 1);
    for (int i = 0; i < d.n * d.k; ++i) d.delta.push_back(pick(rng));
    d.start = pick(rng);
    std::bernoulli_distribution coin(0.4);
    for (int i = 0; i < d.n; ++i) d.accepting.push_back(coin(rng));
    return d;
}

inline RawNfa random_nfa(std::mt19937& rng, int max_states, int symbols) {
    RawNfa m;
    m.n = std::uniform_int_distribution<int>(1, max_states)(rng);
    m.k = symbols;
    std::uniform_int_distribution<int> pick(0, m.n - 1);
    std::uniform_int_distribution<int> count(0, 2 * m.n + 2);
    std::uniform_int_distribution<int> sym(-1, symbols - 1);
    const int edges = count(rng);
    for (int i = 0; i < edges; ++i) m.edges.push_back({pick(rng), sym(rng), pick(rng)});
    m.start = pick(rng);
    std::bernoulli_distribution coin(0.35);
    for (int i = 0; i < m.n; ++i) m.accepting.push_back(coin(rng));
    return m;
}

inline fsmr::Dfa to_dfa(const RawDfa& d) {
    std::vector<std::string> names;
    for (int i = 0; i < d.n; ++i) names.push_back(state_name(i));
    const auto alpha = letters(d.k);
    std::vector<fsmr::StateId> table(d.delta.begin(), d.delta.end());
    return fsmr::Dfa(names, {alpha.begin(), alpha.end()}, table, static_cast<fsmr::StateId>(d.start), d.accepting);
}

inline fsmr::Nfa to_nfa(const RawNfa& m) {
    std::vector<std::string> names;
    for (int i = 0; i < m.n; ++i) names.push_back(state_name(i));
    const auto alpha = letters(m.k);
    std::vector<fsmr::NfaEdge> edges;
    for (const auto& e : m.edges) {
        edges.push_back({static_cast<fsmr::StateId>(e.from),
                         e.symbol < 0 ? std::nullopt : std::optional<std::size_t>(static_cast<std::size_t>(e.symbol)),
                         static_cast<fsmr::StateId>(e.to)});
    }
    return fsmr::Nfa(names, {alpha.begin(), alpha.end()}, edges, static_cast<fsmr::StateId>(m.start), m.accepting);
}

/// Reads a library Dfa back into a plain table through its public accessors.
inline RawDfa from_dfa(const fsmr::Dfa& dfa) {
    RawDfa d;
    d.n = static_cast<int>(dfa.state_count());
    d.k = static_cast<int>(dfa.symbol_count());
    for (int s = 0; s < d.n; ++s) {
        for (int a = 0; a < d.k; ++a) d.delta.push_back(static_cast<int>(dfa.next(s, a)));
        d.accepting.push_back(dfa.is_accepting(s));
    }
    d.start = static_cast<int>(dfa.start());
    return d;
}

/// Membership by folding delta over the word; symbols are 'a' + index.
inline bool fold(const RawDfa& d, std::u32string_view word) {
    int s = d.start;
    for (const char32_t c : word) s = d.next(s, static_cast<int>(c - U'a'));
    return d.accepting[static_cast<std::size_t>(s)];
}

/// Membership for a library Dfa whose alphabet order may differ from 'a', 'b', ...
inline bool fold(const fsmr::Dfa& dfa, std::u32string_view word) {
    fsmr::StateId s = dfa.start();
    for (const char32_t c : word) {
        const auto alpha = dfa.alphabet();
        const auto column = static_cast<std::size_t>(std::find(alpha.begin(), alpha.end(), c) - alpha.begin());
        s = dfa.next(s, column);
    }
    return dfa.is_accepting(s);
}

/// Naive fixpoint closure followed by set stepping.
inline bool nfa_member(const RawNfa& m, std::u32string_view word) {
    auto close = [&](std::set<int> set) {
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& e : m.edges) {
                if (e.symbol == -1 && set.contains(e.from) && set.insert(e.to).second) grew = true;
            }
        }
        return set;
    };
    auto current = close({m.start});
    for (const char32_t c : word) {
        std::set<int> moved;
        for (const auto& e : m.edges) {
            if (e.symbol == static_cast<int>(c - U'a') && current.contains(e.from)) moved.insert(e.to);
        }
        current = close(moved);
    }
    return std::any_of(current.begin(), current.end(), [&](int s) { return m.accepting[static_cast<std::size_t>(s)]; });
}

/// Number of states of the minimal DFA, by the table-filling algorithm on
/// the reachable part.
inline int minimal_state_count(const RawDfa& d) {
    std::vector<bool> reach(static_cast<std::size_t>(d.n), false);
    std::vector<int> stack{d.start};
    reach[static_cast<std::size_t>(d.start)] = true;
    while (!stack.empty()) {
        const int s = stack.back();
        stack.pop_back();
        for (int a = 0; a < d.k; ++a) {
            const int t = d.next(s, a);
            if (!reach[static_cast<std::size_t>(t)]) {
                reach[static_cast<std::size_t>(t)] = true;
                stack.push_back(t);
            }
        }
    }
    std::vector<int> live;
    for (int s = 0; s < d.n; ++s) {
        if (reach[static_cast<std::size_t>(s)]) live.push_back(s);
    }
    const auto n = static_cast<std::size_t>(d.n);
    std::vector<bool> marked(n * n, false);
    for (const int p : live) {
        for (const int q : live) {
            if (d.accepting[static_cast<std::size_t>(p)] != d.accepting[static_cast<std::size_t>(q)]) {
                marked[static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)] = true;
            }
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const int p : live) {
            for (const int q : live) {
                auto cell = marked[static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)];
                if (cell) continue;
                for (int a = 0; a < d.k; ++a) {
                    const auto pa = static_cast<std::size_t>(d.next(p, a));
                    const auto qa = static_cast<std::size_t>(d.next(q, a));
                    if (marked[pa * n + qa]) {
                        cell = true;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    // Count classes: a state opens a new class unless it is unmarked against
    // an earlier live state.
    int classes = 0;
    for (std::size_t i = 0; i < live.size(); ++i) {
        bool fresh = true;
        for (std::size_t j = 0; j < i && fresh; ++j) {
            if (!marked[static_cast<std::size_t>(live[i]) * n + static_cast<std::size_t>(live[j])]) fresh = false;
        }
        if (fresh) ++classes;
    }
    return classes;
}

/// ECMAScript regex match over an ASCII word.
inline bool regex_member(const std::string& pattern, std::u32string_view word) {
    std::string ascii;
    for (const char32_t c : word) ascii.push_back(static_cast<char>(c));
    return std::regex_match(ascii, std::regex(pattern));
}

/// Angle in degrees, measured in screen coordinates (y down), in [0, 360).
inline double heading(double dx, double dy) {
    const double deg = std::atan2(dy, dx) * 180.0 / 3.14159265358979323846;
    return deg < 0 ? deg + 360.0 : deg;
}

inline double angular_gap(double a, double b) {
    const double d = std::fabs(a - b);
    return std::min(d, 360.0 - d);
}

/// Headings at which non-loop edges leave `node`: toward the other endpoint,
/// or toward the quadratic control point for arcs. The control point is
/// recomputed from the documented bend convention.
inline std::vector<double> departure_headings(const fsmr::LayoutGraph& g, std::size_t node) {
    std::vector<double> out;
    for (const auto& e : g.edges) {
        if (e.from == e.to || (e.from != node && e.to != node)) continue;
        const auto other = e.from == node ? e.to : e.from;
        double tx = g.nodes[other].center.x;
        double ty = g.nodes[other].center.y;
        if (const auto* arc = std::get_if<fsmr::ArcRoute>(&e.route)) {
            const auto& lo = g.nodes[std::min(e.from, e.to)].center;
            const auto& hi = g.nodes[std::max(e.from, e.to)].center;
            // Normal of the lo->hi chord rotated a quarter turn (cx, cy) -> (cy, -cx).
            const double cx = hi.x - lo.x;
            const double cy = hi.y - lo.y;
            tx = (lo.x + hi.x) / 2 + cy * arc->bend;
            ty = (lo.y + hi.y) / 2 - cx * arc->bend;
        }
        out.push_back(heading(tx - g.nodes[node].center.x, ty - g.nodes[node].center.y));
    }
    return out;
}

/// Brute force over N, E, S, W (headings 270, 0, 90, 180 with y down): the
/// best minimum gap, first in that order on ties.
inline fsmr::Anchor best_anchor(const std::vector<double>& headings, double* best_gap = nullptr) {
    const std::pair<fsmr::Anchor, double> candidates[] = {
        {fsmr::Anchor::north, 270.0}, {fsmr::Anchor::east, 0.0}, {fsmr::Anchor::south, 90.0}, {fsmr::Anchor::west, 180.0}};
    fsmr::Anchor best = fsmr::Anchor::north;
    double best_value = -1;
    for (const auto& [anchor, deg] : candidates) {
        double gap = 180.0;
        for (const double h : headings) gap = std::min(gap, angular_gap(deg, h));
        if (gap > best_value + 1e-7) {
            best_value = gap;
            best = anchor;
        }
    }
    if (best_gap) *best_gap = best_value;
    return best;
}

}  // namespace oracle
