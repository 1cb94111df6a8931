#include "fsmr/text.hpp"

#include "fsmr/errors.hpp"
#include "fsmr/utf8.hpp"

namespace fsmr::text {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

std::vector<Token> tokenize(std::string_view line, std::size_t line_number, std::size_t first_column) {
    std::vector<Token> tokens;
    auto column_of = [&](std::size_t byte) { return first_column + utf8::scalar_count(line.substr(0, byte)); };

    std::size_t i = 0;
    while (i < line.size()) {
        if (is_space(line[i])) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        const std::size_t begin = i;
        if (line.compare(i, 2, "->") == 0) {
            tokens.push_back({TokenKind::arrow, "->", column_of(i)});
            i += 2;
            continue;
        }
        if (line[i] == '"') {
            std::string value;
            ++i;
            bool closed = false;
            while (i < line.size()) {
                const char c = line[i];
                if (c == '"') {
                    closed = true;
                    ++i;
                    break;
                }
                if (c == '\\') {
                    if (i + 1 >= line.size() || (line[i + 1] != '"' && line[i + 1] != '\\')) {
                        throw ParseError(line_number, column_of(i), "invalid escape; only \\\" and \\\\ are allowed");
                    }
                    value.push_back(line[i + 1]);
                    i += 2;
                    continue;
                }
                value.push_back(c);
                ++i;
            }
            if (!closed) throw ParseError(line_number, column_of(begin), "unterminated quoted token");
            if (i < line.size() && !is_space(line[i]) && line[i] != '#' && line.compare(i, 2, "->") != 0) {
                throw ParseError(line_number, column_of(i), "expected whitespace after quoted token");
            }
            tokens.push_back({TokenKind::quoted, std::move(value), column_of(begin)});
            continue;
        }
        while (i < line.size() && !is_space(line[i]) && line[i] != '#' && line.compare(i, 2, "->") != 0) {
            if (line[i] == '"') throw ParseError(line_number, column_of(i), "unexpected '\"' inside a bare token");
            ++i;
        }
        tokens.push_back({TokenKind::word, std::string(line.substr(begin, i - begin)), column_of(begin)});
    }
    return tokens;
}

bool needs_quoting(std::string_view token) {
    if (token.empty()) return true;
    if (token.find("->") != std::string_view::npos) return true;
    for (const char c : token) {
        if (is_space(c) || c == '\n' || c == '#' || c == '"' || c == '\\') return true;
    }
    return false;
}

std::string quote(std::string_view token) {
    std::string out = "\"";
    for (const char c : token) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string quote_if_needed(std::string_view token) {
    return needs_quoting(token) ? quote(token) : std::string(token);
}

std::string join_quoted(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += quote_if_needed(t);
    }
    return out;
}

}  // namespace fsmr::text
