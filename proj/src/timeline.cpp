#include "fsmr/timeline.hpp"

#include "fsmr/errors.hpp"
#include "fsmr/text.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace fsmr {

std::optional<std::size_t> TableModel::find_row(std::string_view state) const {
    const auto it = std::find(rows.begin(), rows.end(), state);
    if (it == rows.end()) return std::nullopt;
    return static_cast<std::size_t>(it - rows.begin());
}

std::optional<std::size_t> TableModel::find_column(Symbol symbol) const {
    const auto it = std::find(columns.begin(), columns.end(), symbol);
    if (it == columns.end()) return std::nullopt;
    return static_cast<std::size_t>(it - columns.begin());
}

TableModel transition_table(const Dfa& dfa) {
    TableModel table;
    table.rows.assign(dfa.states().begin(), dfa.states().end());
    table.columns.assign(dfa.alphabet().begin(), dfa.alphabet().end());
    table.start_row = dfa.start();
    for (StateId s = 0; s < dfa.state_count(); ++s) {
        table.accepting.push_back(dfa.is_accepting(s));
        for (std::size_t a = 0; a < dfa.symbol_count(); ++a) table.cells.push_back(dfa.name(dfa.next(s, a)));
    }
    return table;
}

Micros event_start(const StepEvent& event) {
    return std::visit([](const auto& e) { return e.start; }, event);
}

Micros event_duration(const StepEvent& event) {
    return std::visit([](const auto& e) { return e.duration; }, event);
}

Micros group_start(const TimelineGroup& group) {
    return std::visit([](const auto& g) { return g.start; }, group);
}

Micros group_duration(const TimelineGroup& group) {
    return std::visit([](const auto& g) { return g.duration; }, group);
}

Micros AnimationTimeline::total_duration() const {
    Micros total{0};
    for (const auto& g : groups) total += group_duration(g);
    return total;
}

namespace {

void check_trace(const Dfa& dfa, const SimulationTrace& trace) {
    const auto n = trace.input.size();
    if (trace.visited.size() != n + 1 || trace.steps.size() != n) {
        throw TraceMismatch("trace length does not match its input");
    }
    if (trace.visited.front() != dfa.name(dfa.start())) {
        throw TraceMismatch(fmt::format("trace starts in '{}' but the machine starts in '{}'", trace.visited.front(),
                                        dfa.name(dfa.start())));
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::string expected;
        try {
            expected = step(dfa, trace.visited[i], trace.input[i]);
        } catch (const ValidationError& e) {
            throw TraceMismatch(fmt::format("step {} does not belong to this machine: {}", i, e.what()));
        }
        if (expected != trace.visited[i + 1] || trace.steps[i] != TraceStep{trace.visited[i], trace.input[i], expected}) {
            throw TraceMismatch(fmt::format("step {} disagrees with the transition function", i));
        }
    }
    const auto last = dfa.find_state(trace.visited.back());
    const auto verdict = dfa.is_accepting(*last) ? Verdict::accepted : Verdict::rejected;
    if (verdict != trace.verdict) throw TraceMismatch("trace verdict disagrees with the machine");
}

void check_layout(const Dfa& dfa, const LayoutGraph& layout) {
    if (layout.nodes.size() != dfa.state_count()) throw TraceMismatch("layout does not cover every state");
    for (StateId s = 0; s < dfa.state_count(); ++s) {
        if (layout.nodes[s].state != dfa.name(s)) throw TraceMismatch(fmt::format("layout has no node for '{}'", dfa.name(s)));
    }
}

}  // namespace

AnimationTimeline build_timeline(const Dfa& dfa, const SimulationTrace& trace, const LayoutGraph& layout,
                                 const StyleConfig& style) {
    check_trace(dfa, trace);
    check_layout(dfa, layout);
    const TableModel table = transition_table(dfa);

    AnimationTimeline timeline;
    timeline.machine_id = trace.machine_id;
    timeline.input = trace.input;
    timeline.ghost_consumed = style.ghost_consumed;

    const auto& d = style.durations;
    timeline.groups.emplace_back(IntroGroup{trace.visited.front(), Micros{0}, d.intro});

    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        const Micros start = d.intro + d.step * static_cast<Micros::rep>(i);
        const auto from_node = *layout.find_node(s.from);
        const auto to_node = *layout.find_node(s.to);
        const auto edge = layout.find_edge(from_node, to_node);
        const auto label = utf8::encode(s.symbol);
        if (!edge || !std::binary_search(layout.edges[*edge].labels.begin(), layout.edges[*edge].labels.end(), label)) {
            throw TraceMismatch(fmt::format("layout has no edge {} --{}--> {}", s.from, label, s.to));
        }
        const auto row = *table.find_row(s.from);
        const auto column = *table.find_column(s.symbol);

        timeline.groups.emplace_back(StepGroup{i, start, d.step,
                                               {ConsumeChar{i, s.symbol, start, d.step},
                                                HighlightEdge{s.from, s.to, s.symbol, *edge, start, d.step},
                                                HighlightCell{s.from, s.symbol, row, column, start, d.step},
                                                MoveMarker{s.from, s.to, start, d.step}}});
    }

    const Micros verdict_start = d.intro + d.step * static_cast<Micros::rep>(trace.steps.size());
    timeline.groups.emplace_back(VerdictGroup{trace.verdict, trace.visited.back(), verdict_start, d.verdict});
    return timeline;
}

std::string format_seconds(Micros time) {
    const auto us = time.count();
    const bool negative = us < 0;
    const auto magnitude = negative ? -us : us;
    std::string out = fmt::format("{}{}", negative ? "-" : "", magnitude / 1'000'000);
    auto fraction = magnitude % 1'000'000;
    if (fraction != 0) {
        std::string digits = fmt::format("{:06d}", fraction);
        while (digits.back() == '0') digits.pop_back();
        out += "." + digits;
    }
    return out;
}

std::string serialize_timeline(const AnimationTimeline& timeline) {
    auto q = [](std::string_view s) { return text::quote_if_needed(s); };
    auto sym = [&](Symbol s) { return q(utf8::encode(s)); };
    auto timing = [](Micros start, Micros duration) {
        return fmt::format("start={} duration={}", format_seconds(start), format_seconds(duration));
    };

    std::string out = "fsmr-timeline 1\n";
    out += fmt::format("machine: {}\n", text::quote_if_needed(timeline.machine_id));
    out += fmt::format("input: {}\n", text::quote_if_needed(utf8::encode(timeline.input)));
    out += fmt::format("consumed: {}\n", timeline.ghost_consumed ? "ghost" : "remove");
    out += fmt::format("groups: {}\n", timeline.groups.size());
    out += fmt::format("total: {}\n", format_seconds(timeline.total_duration()));

    for (std::size_t g = 0; g < timeline.groups.size(); ++g) {
        const auto& group = timeline.groups[g];
        if (const auto* intro = std::get_if<IntroGroup>(&group)) {
            out += fmt::format("group {} intro state={} {}\n", g, q(intro->start_state), timing(intro->start, intro->duration));
        } else if (const auto* step = std::get_if<StepGroup>(&group)) {
            out += fmt::format("group {} step index={} {}\n", g, step->index, timing(step->start, step->duration));
            for (const auto& event : step->events) {
                if (const auto* e = std::get_if<ConsumeChar>(&event)) {
                    out += fmt::format("  consume position={} symbol={} {}\n", e->position, sym(e->symbol), timing(e->start, e->duration));
                } else if (const auto* e = std::get_if<HighlightEdge>(&event)) {
                    out += fmt::format("  edge from={} to={} symbol={} {}\n", q(e->from), q(e->to), sym(e->symbol),
                                       timing(e->start, e->duration));
                } else if (const auto* e = std::get_if<HighlightCell>(&event)) {
                    out += fmt::format("  cell row={} column={} {}\n", q(e->row), sym(e->column), timing(e->start, e->duration));
                } else if (const auto* e = std::get_if<MoveMarker>(&event)) {
                    out += fmt::format("  marker from={} to={} {}\n", q(e->from), q(e->to), timing(e->start, e->duration));
                }
            }
        } else if (const auto* verdict = std::get_if<VerdictGroup>(&group)) {
            out += fmt::format("group {} verdict result={} state={} {}\n", g,
                               verdict->verdict == Verdict::accepted ? "accepted" : "rejected", q(verdict->final_state),
                               timing(verdict->start, verdict->duration));
        }
    }
    return out;
}

}  // namespace fsmr
