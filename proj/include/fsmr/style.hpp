#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace fsmr {

using Micros = std::chrono::microseconds;

struct Palette {
    std::string background = "#fdfdfd";
    std::string state_fill = "#ffffff";
    std::string state_stroke = "#263238";
    std::string text = "#263238";
    std::string edge = "#546e7a";
    std::string accept_ring = "#263238";
    std::string highlight = "#ff9800";
    std::string marker = "#1e88e5";
    std::string accept = "#43a047";
    std::string reject = "#e53935";
    std::string ghost = "#b0bec5";
    std::string table_fill = "#ffffff";
    std::string table_header = "#eceff1";
};

struct Durations {
    Micros intro{2'000'000};
    Micros step{1'000'000};
    Micros verdict{1'500'000};
};

struct StyleConfig {
    double scale = 40;  ///< pixels per layout unit
    std::string font_family = "monospace";
    double font_size = 16;
    int fps = 30;
    Durations durations;
    Palette colors;
    /// Grey consumed input out instead of removing it.
    bool ghost_consumed = false;

    /// Throws InvalidStyle unless scale > 0, fps >= 1, font size > 0,
    /// durations > 0 and every color is `#rrggbb`.
    void validate() const;
};

/// Applies a style file on top of `base`. Same line syntax as `.fsm`:
///
///     scale: 48
///     step-duration: 0.75
///     highlight: "#ffcc00"      # or bare: ffcc00
///     ghost-consumed: true
///
/// Throws ParseError for syntax problems and InvalidStyle for bad values.
StyleConfig parse_style(std::string_view document, StyleConfig base = {});

/// Seconds (as given on the command line or in a style file) to microseconds.
/// Throws InvalidStyle for negative, zero or non-finite values.
Micros seconds_to_micros(double seconds);

}  // namespace fsmr
