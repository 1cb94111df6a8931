#include "fsmr/style.hpp"

#include "fsmr/errors.hpp"
#include "fsmr/text.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace fsmr {
namespace {

bool is_hex_color(std::string_view c) {
    if (c.size() != 7 || c.front() != '#') return false;
    for (const char ch : c.substr(1)) {
        if (!std::isxdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

double parse_number(const text::Token& token, std::size_t line) {
    double value = 0;
    const auto* first = token.text.data();
    const auto* last = first + token.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) throw ParseError(line, token.column, fmt::format("expected a number, found '{}'", token.text));
    return value;
}

}  // namespace

Micros seconds_to_micros(double seconds) {
    if (!std::isfinite(seconds) || seconds <= 0) throw InvalidStyle(fmt::format("duration must be positive, got {}", seconds));
    return Micros{static_cast<Micros::rep>(std::llround(seconds * 1e6))};
}

void StyleConfig::validate() const {
    if (!(scale > 0) || !std::isfinite(scale)) throw InvalidStyle("scale must be > 0");
    if (!(font_size > 0) || !std::isfinite(font_size)) throw InvalidStyle("font size must be > 0");
    if (fps < 1) throw InvalidStyle("fps must be >= 1");
    if (font_family.empty()) throw InvalidStyle("font family must not be empty");
    for (const auto d : {durations.intro, durations.step, durations.verdict}) {
        if (d.count() <= 0) throw InvalidStyle("durations must be positive");
    }
    const std::map<std::string_view, const std::string*> colors_by_name = {
        {"background", &colors.background}, {"state-fill", &colors.state_fill}, {"state-stroke", &colors.state_stroke},
        {"text", &colors.text},             {"edge", &colors.edge},             {"accept-ring", &colors.accept_ring},
        {"highlight", &colors.highlight},   {"marker", &colors.marker},         {"accept", &colors.accept},
        {"reject", &colors.reject},         {"ghost", &colors.ghost},           {"table-fill", &colors.table_fill},
        {"table-header", &colors.table_header}};
    for (const auto& [name, value] : colors_by_name) {
        if (!is_hex_color(*value)) throw InvalidStyle(fmt::format("color '{}' must be #rrggbb, got '{}'", name, *value));
    }
}

StyleConfig parse_style(std::string_view document, StyleConfig style) {
    std::map<std::string_view, std::string*> colors = {
        {"background", &style.colors.background}, {"state-fill", &style.colors.state_fill},
        {"state-stroke", &style.colors.state_stroke}, {"text", &style.colors.text},
        {"edge", &style.colors.edge},             {"accept-ring", &style.colors.accept_ring},
        {"highlight", &style.colors.highlight},   {"marker", &style.colors.marker},
        {"accept", &style.colors.accept},         {"reject", &style.colors.reject},
        {"ghost", &style.colors.ghost},           {"table-fill", &style.colors.table_fill},
        {"table-header", &style.colors.table_header}};

    std::set<std::string> seen;
    std::size_t line_number = 0;
    std::size_t offset = 0;
    while (offset <= document.size()) {
        const auto end = document.find('\n', offset);
        const auto line = document.substr(offset, end == std::string_view::npos ? std::string_view::npos : end - offset);
        ++line_number;
        offset = end == std::string_view::npos ? document.size() + 1 : end + 1;

        const auto tokens = text::tokenize(line, line_number);
        if (tokens.empty()) continue;
        const auto& head = tokens.front();
        if (head.kind != text::TokenKind::word || head.text.size() < 2 || head.text.back() != ':') {
            throw ParseError(line_number, head.column, "expected 'key: value'");
        }
        const std::string key = head.text.substr(0, head.text.size() - 1);
        if (tokens.size() != 2) {
            throw ParseError(line_number, tokens.size() > 2 ? tokens[2].column : head.column,
                             fmt::format("'{}:' takes exactly one value", key));
        }
        if (!seen.insert(key).second) throw DuplicateField(line_number, head.column, fmt::format("'{}' set twice", key));
        const auto& value = tokens[1];

        if (const auto color = colors.find(key); color != colors.end()) {
            std::string hex = value.text.starts_with('#') ? value.text : "#" + value.text;
            std::transform(hex.begin(), hex.end(), hex.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            *color->second = std::move(hex);
        } else if (key == "scale") {
            style.scale = parse_number(value, line_number);
        } else if (key == "font-family") {
            style.font_family = value.text;
        } else if (key == "font-size") {
            style.font_size = parse_number(value, line_number);
        } else if (key == "fps") {
            const double fps = parse_number(value, line_number);
            if (fps != std::floor(fps) || fps < 1 || fps > 1000) throw InvalidStyle("fps must be a whole number in [1, 1000]");
            style.fps = static_cast<int>(fps);
        } else if (key == "intro-duration") {
            style.durations.intro = seconds_to_micros(parse_number(value, line_number));
        } else if (key == "step-duration") {
            style.durations.step = seconds_to_micros(parse_number(value, line_number));
        } else if (key == "verdict-duration") {
            style.durations.verdict = seconds_to_micros(parse_number(value, line_number));
        } else if (key == "ghost-consumed") {
            if (value.text != "true" && value.text != "false") {
                throw ParseError(line_number, value.column, "expected true or false");
            }
            style.ghost_consumed = value.text == "true";
        } else {
            throw ParseError(line_number, head.column, fmt::format("unknown style key '{}'", key));
        }
    }
    style.validate();
    return style;
}

}  // namespace fsmr
