#include "fsmr/definition.hpp"

#include "fsmr/errors.hpp"
#include "fsmr/text.hpp"
#include "fsmr/utf8.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

namespace fsmr {
namespace {

using text::Token;
using text::TokenKind;

constexpr std::array<std::string_view, 7> known_fields = {"kind", "name", "states", "alphabet",
                                                          "start", "accept", "delta"};

struct Position {
    std::size_t line;
    std::size_t column;
};

// Source positions of transition tokens, kept beside the definition so that
// kind-dependent checks can run once the whole document has been read.
struct TransitionSite {
    Position symbol;
    Position target;
    bool extra_target;  // second or later target on the same line
};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
    return s;
}

bool title_needs_quoting(std::string_view title) {
    return title.empty() || title.front() == '"' || title.find('#') != std::string_view::npos ||
           is_blank(title.front()) || is_blank(title.back());
}

class DocumentParser {
public:
    explicit DocumentParser(std::string_view document) : document_(document) {}

    MachineDefinition parse() {
        utf8::DecodeFailure failure{};
        if (!utf8::decode(document_, &failure)) {
            const auto prefix = document_.substr(0, failure.byte_offset);
            const auto line = 1 + static_cast<std::size_t>(std::count(prefix.begin(), prefix.end(), '\n'));
            const auto line_start = prefix.rfind('\n');
            const auto col_prefix = line_start == std::string_view::npos ? prefix : prefix.substr(line_start + 1);
            throw ParseError(line, 1 + utf8::scalar_count(col_prefix), "invalid UTF-8");
        }

        std::size_t line_number = 0;
        std::size_t offset = 0;
        while (offset <= document_.size()) {
            const auto end = document_.find('\n', offset);
            const auto line = document_.substr(offset, end == std::string_view::npos ? std::string_view::npos : end - offset);
            ++line_number;
            parse_line(line, line_number);
            if (end == std::string_view::npos) break;
            offset = end + 1;
        }
        finish();
        return std::move(definition_);
    }

private:
    void parse_line(std::string_view line, std::size_t line_number) {
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') return;
        if (is_blank(line.front())) {
            if (!in_delta_) throw ParseError(line_number, 1, "indented line outside of a 'delta:' block");
            parse_transition(line, line_number);
            return;
        }
        in_delta_ = false;

        const auto colon = line.find(':');
        const auto key = line.substr(0, colon);
        if (colon == std::string_view::npos || std::find(known_fields.begin(), known_fields.end(), key) == known_fields.end()) {
            const auto shown = colon == std::string_view::npos ? line : key;
            throw ParseError(line_number, 1, fmt::format("expected a field ('kind:', 'states:', ...), found '{}'", shown));
        }
        if (!seen_.insert(std::string(key)).second) {
            throw DuplicateField(line_number, 1, fmt::format("field '{}' declared more than once", key));
        }
        const auto rest = line.substr(colon + 1);
        const std::size_t rest_column = 1 + utf8::scalar_count(line.substr(0, colon + 1));

        if (key == "name") {
            parse_title(rest, line_number, rest_column);
            return;
        }

        const auto tokens = text::tokenize(rest, line_number, rest_column);
        for (const auto& t : tokens) {
            if (t.kind == TokenKind::arrow) throw ParseError(line_number, t.column, "unexpected '->'");
        }
        auto names = [&] {
            std::vector<std::string> out;
            out.reserve(tokens.size());
            for (const auto& t : tokens) out.push_back(t.text);
            return out;
        };
        auto single = [&](std::string_view field) -> const Token& {
            if (tokens.size() != 1) {
                const auto column = tokens.empty() ? rest_column : tokens[1].column;
                throw ParseError(line_number, column, fmt::format("'{}:' takes exactly one value", field));
            }
            return tokens.front();
        };

        if (key == "kind") {
            const auto& t = single("kind");
            if (t.text == "dfa") {
                definition_.kind = MachineKind::dfa;
            } else if (t.text == "nfa") {
                definition_.kind = MachineKind::nfa;
            } else {
                throw UnknownKind(line_number, t.column, fmt::format("unknown kind '{}' (expected dfa or nfa)", t.text));
            }
        } else if (key == "states") {
            definition_.states = names();
        } else if (key == "alphabet") {
            definition_.alphabet = names();
        } else if (key == "start") {
            definition_.start = single("start").text;
        } else if (key == "accept") {
            definition_.accepting = names();
        } else if (key == "delta") {
            if (!tokens.empty()) throw ParseError(line_number, tokens.front().column, "transitions go on indented lines below 'delta:'");
            in_delta_ = true;
        }
    }

    void parse_title(std::string_view rest, std::size_t line_number, std::size_t rest_column) {
        const auto value = trim(rest);
        if (!value.empty() && value.front() == '"') {
            const auto tokens = text::tokenize(rest, line_number, rest_column);
            if (tokens.size() != 1 || tokens.front().kind != TokenKind::quoted) {
                const auto column = tokens.size() > 1 ? tokens[1].column : rest_column;
                throw ParseError(line_number, column, "a quoted name must be the only value on its line");
            }
            definition_.title = tokens.front().text;
            return;
        }
        const auto hash = value.find('#');
        definition_.title = std::string(trim(value.substr(0, hash)));
    }

    void parse_transition(std::string_view line, std::size_t line_number) {
        const auto tokens = text::tokenize(line, line_number);
        auto fail = [&](std::size_t index, std::string_view what) {
            const auto column = index < tokens.size() ? tokens[index].column : 1 + utf8::scalar_count(line);
            throw ParseError(line_number, column, fmt::format("malformed transition: {} (expected 'from symbol -> to')", what));
        };
        if (tokens.size() > 0 && tokens[0].kind == TokenKind::arrow) fail(0, "missing source state");
        if (tokens.size() > 1 && tokens[1].kind == TokenKind::arrow) fail(1, "missing symbol");
        if (tokens.size() > 2 && tokens[2].kind != TokenKind::arrow) fail(2, "expected '->'");
        if (tokens.size() < 4) fail(tokens.size(), fmt::format("{} field(s) found", tokens.size()));
        for (std::size_t i = 3; i < tokens.size(); ++i) {
            if (tokens[i].kind == TokenKind::arrow) fail(i, "unexpected second '->'");
        }

        std::optional<std::string> symbol;
        if (!(tokens[1].kind == TokenKind::word && tokens[1].text == epsilon_token)) symbol = tokens[1].text;
        for (std::size_t i = 3; i < tokens.size(); ++i) {
            definition_.transitions.push_back({tokens[0].text, symbol, tokens[i].text});
            sites_.push_back({{line_number, tokens[1].column}, {line_number, tokens[i].column}, i > 3});
        }
    }

    void finish() {
        for (const std::string_view required : {"kind", "states", "alphabet", "start"}) {
            if (!seen_.contains(std::string(required))) {
                throw ParseError(1, 1, fmt::format("missing required field '{}:'", required));
            }
        }
        if (definition_.kind != MachineKind::dfa) return;

        std::set<std::pair<std::string, std::string>> defined;
        for (std::size_t i = 0; i < definition_.transitions.size(); ++i) {
            const auto& t = definition_.transitions[i];
            const auto& site = sites_[i];
            if (!t.symbol) throw ParseError(site.symbol.line, site.symbol.column, "epsilon transitions are only allowed with 'kind: nfa'");
            if (site.extra_target) throw ParseError(site.target.line, site.target.column, "a dfa transition has exactly one target");
            if (!defined.emplace(t.from, *t.symbol).second) {
                throw DuplicateField(site.symbol.line, site.symbol.column,
                                     fmt::format("duplicate transition for ('{}', '{}')", t.from, *t.symbol));
            }
        }
    }

    std::string_view document_;
    MachineDefinition definition_;
    std::set<std::string> seen_;
    std::vector<TransitionSite> sites_;
    bool in_delta_ = false;
};

}  // namespace

std::string_view to_string(MachineKind kind) { return kind == MachineKind::dfa ? "dfa" : "nfa"; }

MachineDefinition parse_definition(std::string_view document) { return DocumentParser(document).parse(); }

std::string serialize_definition(const MachineDefinition& d) {
    auto field = [](std::string_view key, const std::vector<std::string>& values) {
        const auto joined = text::join_quoted(values);
        return joined.empty() ? fmt::format("{}:\n", key) : fmt::format("{}: {}\n", key, joined);
    };

    std::string out = fmt::format("kind: {}\n", to_string(d.kind));
    if (d.title) {
        out += fmt::format("name: {}\n", title_needs_quoting(*d.title) ? text::quote(*d.title) : *d.title);
    }
    out += field("states", d.states);
    out += field("alphabet", d.alphabet);
    out += field("start", {d.start});
    out += field("accept", d.accepting);
    out += "delta:\n";
    for (const auto& t : d.transitions) {
        std::string symbol;
        if (!t.symbol) {
            symbol = epsilon_token;
        } else if (*t.symbol == epsilon_token) {
            symbol = text::quote(*t.symbol);
        } else {
            symbol = text::quote_if_needed(*t.symbol);
        }
        out += fmt::format("  {} {} -> {}\n", text::quote_if_needed(t.from), symbol, text::quote_if_needed(t.to));
    }
    return out;
}

}  // namespace fsmr
