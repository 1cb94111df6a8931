#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Line-oriented token syntax shared by `.fsm` machine files, style files and
// the timeline document.
namespace fsmr::text {

enum class TokenKind { word, quoted, arrow };

struct Token {
    TokenKind kind;
    std::string text;    ///< unescaped contents; "->" for arrows
    std::size_t column;  ///< 1-based scalar column of the first character
};

/// Splits one line into tokens, stopping at an unquoted `#`. `->` is always a
/// separate arrow token unless quoted. Throws ParseError on an unterminated
/// quote, a bad escape, or a stray `"` inside a bare word.
std::vector<Token> tokenize(std::string_view line, std::size_t line_number,
                            std::size_t first_column = 1);

/// True if `token` cannot be written bare: empty, whitespace, `#`, `->`, `"` or `\`.
bool needs_quoting(std::string_view token);

std::string quote(std::string_view token);

/// `token` bare when possible, otherwise quoted.
std::string quote_if_needed(std::string_view token);

/// Joins tokens with single spaces, quoting where required.
std::string join_quoted(const std::vector<std::string>& tokens);

}  // namespace fsmr::text
