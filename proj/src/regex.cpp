#include "fsmr/regex.hpp"

#include "fsmr/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

namespace fsmr {

Regex Regex::epsilon() { return Regex{}; }

Regex Regex::literal(Symbol symbol) { return Regex{RegexKind::literal, symbol, {}}; }

Regex Regex::concat(Regex left, Regex right) {
    Regex r{RegexKind::concat, 0, {}};
    r.operands.push_back(std::move(left));
    r.operands.push_back(std::move(right));
    return r;
}

Regex Regex::alternation(Regex left, Regex right) {
    Regex r{RegexKind::alternation, 0, {}};
    r.operands.push_back(std::move(left));
    r.operands.push_back(std::move(right));
    return r;
}

Regex Regex::star(Regex inner) {
    Regex r{RegexKind::star, 0, {}};
    r.operands.push_back(std::move(inner));
    return r;
}

namespace {

constexpr Symbol epsilon_scalar = U'ε';
constexpr std::string_view operand_expected = "a literal, 'ε' or '('";

class RegexParser {
public:
    explicit RegexParser(std::u32string text) : text_(std::move(text)) {}

    Regex parse() {
        Regex r = parse_alternation();
        if (pos_ < text_.size()) {
            throw RegexSyntaxError(pos_, text_[pos_] == U')' ? "end of input (unbalanced ')')" : "end of input");
        }
        return r;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    Symbol peek() const { return text_[pos_]; }

    Regex parse_alternation() {
        Regex left = parse_concat();
        while (!at_end() && peek() == U'|') {
            ++pos_;
            left = Regex::alternation(std::move(left), parse_concat());
        }
        return left;
    }

    Regex parse_concat() {
        Regex left = parse_postfix();
        while (!at_end() && peek() != U'|' && peek() != U')') {
            left = Regex::concat(std::move(left), parse_postfix());
        }
        return left;
    }

    Regex parse_postfix() {
        Regex atom = parse_atom();
        while (!at_end() && peek() == U'*') {
            ++pos_;
            atom = Regex::star(std::move(atom));
        }
        return atom;
    }

    Regex parse_atom() {
        if (at_end()) throw RegexSyntaxError(pos_, std::string(operand_expected));
        const Symbol c = peek();
        switch (c) {
            case U'(': {
                ++pos_;
                Regex inner = parse_alternation();
                if (at_end() || peek() != U')') throw RegexSyntaxError(pos_, "')'");
                ++pos_;
                return inner;
            }
            case U'|':
            case U')':
            case U'*':
                throw RegexSyntaxError(pos_, std::string(operand_expected));
            case epsilon_scalar:
                ++pos_;
                return Regex::epsilon();
            case U'\\':
                ++pos_;
                if (at_end()) throw RegexSyntaxError(pos_, "a character after '\\'");
                return Regex::literal(text_[pos_++]);
            default:
                ++pos_;
                return Regex::literal(c);
        }
    }

    std::u32string text_;
    std::size_t pos_ = 0;
};

void collect_symbols(const Regex& r, std::set<Symbol>& out) {
    if (r.kind == RegexKind::literal) out.insert(r.symbol);
    for (const auto& op : r.operands) collect_symbols(op, out);
}

struct Fragment {
    StateId start;
    StateId accept;
};

class ThompsonBuilder {
public:
    explicit ThompsonBuilder(const std::vector<Symbol>& alphabet) : alphabet_(alphabet) {}

    Fragment build(const Regex& r) {
        switch (r.kind) {
            case RegexKind::empty_string: {
                const Fragment f{fresh(), fresh()};
                edges_.push_back({f.start, std::nullopt, f.accept});
                return f;
            }
            case RegexKind::literal: {
                const Fragment f{fresh(), fresh()};
                const auto column = std::lower_bound(alphabet_.begin(), alphabet_.end(), r.symbol) - alphabet_.begin();
                edges_.push_back({f.start, static_cast<std::size_t>(column), f.accept});
                return f;
            }
            case RegexKind::concat: {
                const Fragment left = build(r.operands[0]);
                const Fragment right = build(r.operands[1]);
                edges_.push_back({left.accept, std::nullopt, right.start});
                return {left.start, right.accept};
            }
            case RegexKind::alternation: {
                const StateId start = fresh();
                const Fragment left = build(r.operands[0]);
                const Fragment right = build(r.operands[1]);
                const StateId accept = fresh();
                edges_.push_back({start, std::nullopt, left.start});
                edges_.push_back({start, std::nullopt, right.start});
                edges_.push_back({left.accept, std::nullopt, accept});
                edges_.push_back({right.accept, std::nullopt, accept});
                return {start, accept};
            }
            case RegexKind::star: {
                const StateId start = fresh();
                const Fragment inner = build(r.operands[0]);
                const StateId accept = fresh();
                edges_.push_back({start, std::nullopt, inner.start});
                edges_.push_back({start, std::nullopt, accept});
                edges_.push_back({inner.accept, std::nullopt, inner.start});
                edges_.push_back({inner.accept, std::nullopt, accept});
                return {start, accept};
            }
        }
        return {};
    }

    std::size_t state_count() const { return count_; }
    const std::vector<NfaEdge>& edges() const { return edges_; }

private:
    StateId fresh() { return count_++; }

    const std::vector<Symbol>& alphabet_;
    std::vector<NfaEdge> edges_;
    std::size_t count_ = 0;
};

}  // namespace

Regex parse_regex(std::string_view text) {
    utf8::DecodeFailure failure{};
    auto decoded = utf8::decode(text, &failure);
    if (!decoded) throw RegexSyntaxError(failure.scalar_index, "valid UTF-8");
    return RegexParser(std::move(*decoded)).parse();
}

std::string to_string(const Regex& r) {
    switch (r.kind) {
        case RegexKind::empty_string:
            return "ε";
        case RegexKind::literal:
            return utf8::encode(r.symbol);
        case RegexKind::concat:
            return "Concat(" + to_string(r.operands[0]) + "," + to_string(r.operands[1]) + ")";
        case RegexKind::alternation:
            return "Union(" + to_string(r.operands[0]) + "," + to_string(r.operands[1]) + ")";
        case RegexKind::star:
            return "Star(" + to_string(r.operands[0]) + ")";
    }
    return {};
}

std::vector<Symbol> regex_symbols(const Regex& regex) {
    std::set<Symbol> symbols;
    collect_symbols(regex, symbols);
    return {symbols.begin(), symbols.end()};
}

Nfa regex_to_nfa(const Regex& regex, std::span<const Symbol> extra_alphabet) {
    std::set<Symbol> symbol_set;
    collect_symbols(regex, symbol_set);
    symbol_set.insert(extra_alphabet.begin(), extra_alphabet.end());
    const std::vector<Symbol> alphabet(symbol_set.begin(), symbol_set.end());

    ThompsonBuilder builder(alphabet);
    const Fragment whole = builder.build(regex);
    const auto n = builder.state_count();

    // Renumber breadth-first from the start so that names read left to right.
    std::vector<std::vector<NfaEdge>> outgoing(n);
    for (const auto& e : builder.edges()) outgoing[e.from].push_back(e);
    for (auto& list : outgoing) {
        std::stable_sort(list.begin(), list.end(), [&](const NfaEdge& x, const NfaEdge& y) {
            return x.symbol.value_or(alphabet.size()) < y.symbol.value_or(alphabet.size());
        });
    }
    constexpr StateId unset = static_cast<StateId>(-1);
    std::vector<StateId> order(n, unset);
    std::size_t next = 0;
    std::deque<StateId> queue{whole.start};
    order[whole.start] = next++;
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        for (const auto& e : outgoing[s]) {
            if (order[e.to] == unset) {
                order[e.to] = next++;
                queue.push_back(e.to);
            }
        }
    }

    std::vector<std::string> names(next);
    for (std::size_t i = 0; i < next; ++i) names[i] = "q" + std::to_string(i);
    std::vector<NfaEdge> edges;
    for (const auto& e : builder.edges()) {
        if (order[e.from] == unset) continue;
        edges.push_back({order[e.from], e.symbol, order[e.to]});
    }
    std::vector<bool> accepting(next, false);
    accepting[order[whole.accept]] = true;
    return Nfa(std::move(names), alphabet, edges, 0, std::move(accepting));
}

}  // namespace fsmr
