#pragma once

#include "fsmr/automata.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fsmr {

/// Point in abstract canvas units; a state node has radius 1. y grows downward.
struct Point {
    double x = 0;
    double y = 0;

    bool operator==(const Point&) const = default;
};

enum class Anchor { north, east, south, west };

struct StraightRoute {
    bool operator==(const StraightRoute&) const = default;
};

/// Quadratic arc. The control point sits at the chord midpoint displaced by
/// `bend * chord length` along the normal of the canonical chord, which runs
/// from the endpoint declared first to the one declared later. Opposite edges
/// therefore carry opposite bend signs and bulge to opposite sides.
struct ArcRoute {
    double bend = 0;
    bool operator==(const ArcRoute&) const = default;
};

struct SelfLoopRoute {
    Anchor anchor = Anchor::north;
    bool operator==(const SelfLoopRoute&) const = default;
};

using Route = std::variant<StraightRoute, ArcRoute, SelfLoopRoute>;

struct LayoutNode {
    std::string state;
    Point center;
    std::size_t rank = 0;
    bool accepting = false;

    bool operator==(const LayoutNode&) const = default;
};

/// All transitions between one ordered pair of states.
struct LayoutEdge {
    std::size_t from = 0;  ///< node index
    std::size_t to = 0;    ///< node index
    std::vector<std::string> labels;  ///< sorted; "ε" for epsilon moves
    Route route;

    std::string label_text() const;  ///< "a, b"
    bool operator==(const LayoutEdge&) const = default;
};

struct Bounds {
    double min_x = 0;
    double min_y = 0;
    double width = 0;
    double height = 0;

    bool operator==(const Bounds&) const = default;
};

struct LayoutGraph {
    std::vector<LayoutNode> nodes;  ///< machine declaration order
    std::vector<LayoutEdge> edges;  ///< ordered by (from, to)
    std::size_t start = 0;
    Bounds bounds;  ///< extent of the node discs

    std::optional<std::size_t> find_node(std::string_view state) const;
    std::optional<std::size_t> find_edge(std::size_t from, std::size_t to) const;

    bool operator==(const LayoutGraph&) const = default;
};

inline constexpr double rank_spacing = 4.0;
inline constexpr double row_spacing = 3.0;
inline constexpr double node_radius = 1.0;
inline constexpr double adjacent_arc_bend = 0.2;
inline constexpr double long_arc_bend = 0.35;

/// Layered left-to-right layout: rank = breadth-first distance from start
/// (unreachable states share rank max+1), x = 4 * rank, rows ordered by the
/// mean y of already-placed predecessors (0 when there are none) with ties
/// broken by name, 3 units apart and centred on y = 0.
LayoutGraph layout(const Dfa& dfa);
LayoutGraph layout(const Nfa& nfa);

/// Quadratic control point of an arc edge.
Point arc_control_point(const LayoutGraph& graph, const LayoutEdge& edge);

/// Unit direction in which a non-loop edge leaves `node` (toward the other
/// endpoint for straight edges, toward the control point for arcs).
Point departure_direction(const LayoutGraph& graph, const LayoutEdge& edge, std::size_t node);

/// Anchor maximizing the smallest angle to every non-loop edge incident to
/// `state`; ties resolve in N, E, S, W order.
Anchor place_self_loop(const LayoutGraph& graph, std::string_view state);

/// Unit vector pointing out of the node at `anchor` (north is -y).
Point anchor_direction(Anchor anchor);

std::string_view to_string(Anchor anchor);

/// Stable text dump used for determinism checks and debugging.
std::string serialize_layout(const LayoutGraph& graph);

}  // namespace fsmr
