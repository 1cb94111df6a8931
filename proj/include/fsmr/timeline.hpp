#pragma once

#include "fsmr/automata.hpp"
#include "fsmr/layout.hpp"
#include "fsmr/style.hpp"

#include <string>
#include <variant>
#include <vector>

namespace fsmr {

/// Matrix view of δ: one row per state, one column per symbol, both in
/// declaration order.
struct TableModel {
    std::vector<std::string> rows;
    std::vector<Symbol> columns;
    std::vector<std::string> cells;  ///< row-major
    std::size_t start_row = 0;
    std::vector<bool> accepting;

    const std::string& cell(std::size_t row, std::size_t column) const { return cells[row * columns.size() + column]; }
    std::optional<std::size_t> find_row(std::string_view state) const;
    std::optional<std::size_t> find_column(Symbol symbol) const;

    bool operator==(const TableModel&) const = default;
};

TableModel transition_table(const Dfa& dfa);

// ---------------------------------------------------------------------------
// Events. Every event in a step group carries the group's start and duration.

struct ConsumeChar {
    std::size_t position = 0;
    Symbol symbol = 0;
    Micros start{};
    Micros duration{};
    bool operator==(const ConsumeChar&) const = default;
};

struct HighlightEdge {
    std::string from;
    std::string to;
    Symbol symbol = 0;
    std::size_t edge = 0;  ///< index into LayoutGraph::edges
    Micros start{};
    Micros duration{};
    bool operator==(const HighlightEdge&) const = default;
};

struct HighlightCell {
    std::string row;
    Symbol column = 0;
    std::size_t row_index = 0;
    std::size_t column_index = 0;
    Micros start{};
    Micros duration{};
    bool operator==(const HighlightCell&) const = default;
};

struct MoveMarker {
    std::string from;
    std::string to;
    Micros start{};
    Micros duration{};
    bool operator==(const MoveMarker&) const = default;
};

using StepEvent = std::variant<ConsumeChar, HighlightEdge, HighlightCell, MoveMarker>;

Micros event_start(const StepEvent& event);
Micros event_duration(const StepEvent& event);

/// Diagram, table and full input appear with the marker on the start state.
struct IntroGroup {
    std::string start_state;
    Micros start{};
    Micros duration{};
    bool operator==(const IntroGroup&) const = default;
};

/// Everything that happens while one input symbol is read, all at once.
struct StepGroup {
    std::size_t index = 0;
    Micros start{};
    Micros duration{};
    std::vector<StepEvent> events;  ///< consume, edge, cell, marker
    bool operator==(const StepGroup&) const = default;
};

struct VerdictGroup {
    Verdict verdict = Verdict::rejected;
    std::string final_state;
    Micros start{};
    Micros duration{};
    bool operator==(const VerdictGroup&) const = default;
};

using TimelineGroup = std::variant<IntroGroup, StepGroup, VerdictGroup>;

Micros group_start(const TimelineGroup& group);
Micros group_duration(const TimelineGroup& group);

struct AnimationTimeline {
    std::string machine_id;
    std::u32string input;
    std::vector<TimelineGroup> groups;  ///< intro, one step per symbol, verdict
    bool ghost_consumed = false;

    Micros total_duration() const;
    bool operator==(const AnimationTimeline&) const = default;
};

/// Throws TraceMismatch when the trace was not produced by `dfa` or the
/// layout does not cover it.
AnimationTimeline build_timeline(const Dfa& dfa, const SimulationTrace& trace, const LayoutGraph& layout,
                                 const StyleConfig& style);

/// Line-oriented timeline document (`--format timeline`):
///
///     fsmr-timeline 1
///     machine: "even number of a's"
///     input: ab
///     consumed: remove
///     groups: 4
///     total: 5.5
///     group 0 intro state=e start=0 duration=2
///     group 1 step index=0 start=2 duration=1
///       consume position=0 symbol=a start=2 duration=1
///       edge from=e to=o symbol=a start=2 duration=1
///       cell row=e column=a start=2 duration=1
///       marker from=e to=o start=2 duration=1
///     group 2 step index=1 start=3 duration=1
///       ...
///     group 3 verdict result=rejected state=o start=4 duration=1.5
///
/// Times are seconds with up to six decimals and no trailing zeros.
std::string serialize_timeline(const AnimationTimeline& timeline);

/// "2", "1.5", "0.333333".
std::string format_seconds(Micros time);

}  // namespace fsmr
