#include "fsmr/layout.hpp"

#include "fsmr/text.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <set>

namespace fsmr {
namespace {

struct GraphInput {
    std::vector<std::string> names;
    std::vector<bool> accepting;
    std::size_t start = 0;
    /// (from, to) -> labels, plus successor lists in exploration order.
    std::map<std::pair<std::size_t, std::size_t>, std::set<std::string>> labels;
    std::vector<std::vector<std::size_t>> successors;
};

Point normalized(Point p) {
    const double length = std::hypot(p.x, p.y);
    if (length == 0) return {0, 0};
    return {p.x / length, p.y / length};
}

double angle_between(Point a, Point b) {
    const double dot = std::clamp(a.x * b.x + a.y * b.y, -1.0, 1.0);
    return std::acos(dot);
}

LayoutGraph build_layout(const GraphInput& in) {
    const auto n = in.names.size();
    LayoutGraph graph;
    graph.start = in.start;

    constexpr std::size_t unranked = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> rank(n, unranked);
    rank[in.start] = 0;
    std::deque<std::size_t> queue{in.start};
    std::size_t max_rank = 0;
    while (!queue.empty()) {
        const auto s = queue.front();
        queue.pop_front();
        for (const auto t : in.successors[s]) {
            if (rank[t] != unranked) continue;
            rank[t] = rank[s] + 1;
            max_rank = std::max(max_rank, rank[t]);
            queue.push_back(t);
        }
    }
    for (auto& r : rank) {
        if (r == unranked) r = max_rank + 1;
    }
    const auto last_rank = *std::max_element(rank.begin(), rank.end());

    std::vector<std::vector<std::size_t>> predecessors(n);
    for (const auto& [pair, _] : in.labels) {
        if (pair.first != pair.second) predecessors[pair.second].push_back(pair.first);
    }

    std::vector<Point> position(n);
    std::vector<std::size_t> slot(n, 0);
    std::vector<bool> placed(n, false);
    for (std::size_t r = 0; r <= last_rank; ++r) {
        std::vector<std::pair<double, std::size_t>> members;
        for (std::size_t s = 0; s < n; ++s) {
            if (rank[s] != r) continue;
            double sum = 0;
            std::size_t count = 0;
            for (const auto p : predecessors[s]) {
                if (placed[p] && rank[p] < r) {
                    sum += position[p].y;
                    ++count;
                }
            }
            members.emplace_back(count == 0 ? 0.0 : sum / static_cast<double>(count), s);
        }
        std::sort(members.begin(), members.end(), [&](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return in.names[a.second] < in.names[b.second];
        });
        const double offset = static_cast<double>(members.size() - 1) / 2.0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto s = members[i].second;
            position[s] = {rank_spacing * static_cast<double>(r), row_spacing * (static_cast<double>(i) - offset)};
            slot[s] = i;
            placed[s] = true;
        }
    }

    for (std::size_t s = 0; s < n; ++s) {
        graph.nodes.push_back({in.names[s], position[s], rank[s], in.accepting[s]});
    }

    for (const auto& [pair, labels] : in.labels) {
        const auto [u, v] = pair;
        LayoutEdge edge{u, v, {labels.begin(), labels.end()}, StraightRoute{}};
        if (u != v) {
            const bool reverse = in.labels.contains({v, u});
            const auto rank_gap = rank[u] > rank[v] ? rank[u] - rank[v] : rank[v] - rank[u];
            const auto slot_gap = slot[u] > slot[v] ? slot[u] - slot[v] : slot[v] - slot[u];
            const bool adjacent = rank_gap == 1 || (rank_gap == 0 && slot_gap == 1);
            if (reverse) {
                edge.route = ArcRoute{u < v ? adjacent_arc_bend : -adjacent_arc_bend};
            } else if (!adjacent) {
                edge.route = ArcRoute{long_arc_bend};
            }
        }
        graph.edges.push_back(std::move(edge));
    }

    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    for (const auto& p : position) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    graph.bounds = {min_x - node_radius, min_y - node_radius, max_x - min_x + 2 * node_radius,
                    max_y - min_y + 2 * node_radius};

    // Loops are anchored last so that they see every straight and arc route.
    for (auto& edge : graph.edges) {
        if (edge.from == edge.to) edge.route = SelfLoopRoute{place_self_loop(graph, in.names[edge.from])};
    }
    return graph;
}

}  // namespace

std::string LayoutEdge::label_text() const {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) out += ", ";
        out += labels[i];
    }
    return out;
}

std::optional<std::size_t> LayoutGraph::find_node(std::string_view state) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].state == state) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> LayoutGraph::find_edge(std::size_t from, std::size_t to) const {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].from == from && edges[i].to == to) return i;
    }
    return std::nullopt;
}

LayoutGraph layout(const Dfa& dfa) {
    GraphInput in;
    in.names.assign(dfa.states().begin(), dfa.states().end());
    in.start = dfa.start();
    in.successors.resize(dfa.state_count());
    for (StateId s = 0; s < dfa.state_count(); ++s) {
        in.accepting.push_back(dfa.is_accepting(s));
        for (std::size_t a = 0; a < dfa.symbol_count(); ++a) {
            const auto t = dfa.next(s, a);
            in.labels[{s, t}].insert(utf8::encode(dfa.alphabet()[a]));
            in.successors[s].push_back(t);
        }
    }
    return build_layout(in);
}

LayoutGraph layout(const Nfa& nfa) {
    GraphInput in;
    in.names.assign(nfa.states().begin(), nfa.states().end());
    in.start = nfa.start();
    in.successors.resize(nfa.state_count());
    for (StateId s = 0; s < nfa.state_count(); ++s) in.accepting.push_back(nfa.is_accepting(s));
    for (const auto& e : nfa.edges()) {
        in.labels[{e.from, e.to}].insert(e.symbol ? utf8::encode(nfa.alphabet()[*e.symbol]) : std::string("ε"));
        in.successors[e.from].push_back(e.to);
    }
    return build_layout(in);
}

Point arc_control_point(const LayoutGraph& graph, const LayoutEdge& edge) {
    const auto& a = graph.nodes[edge.from].center;
    const auto& b = graph.nodes[edge.to].center;
    const Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    const auto* arc = std::get_if<ArcRoute>(&edge.route);
    if (arc == nullptr) return mid;
    const auto lo = std::min(edge.from, edge.to);
    const auto hi = std::max(edge.from, edge.to);
    const Point chord{graph.nodes[hi].center.x - graph.nodes[lo].center.x,
                      graph.nodes[hi].center.y - graph.nodes[lo].center.y};
    const double length = std::hypot(chord.x, chord.y);
    const Point normal = normalized({chord.y, -chord.x});
    return {mid.x + normal.x * arc->bend * length, mid.y + normal.y * arc->bend * length};
}

Point departure_direction(const LayoutGraph& graph, const LayoutEdge& edge, std::size_t node) {
    const auto other = edge.from == node ? edge.to : edge.from;
    const auto& here = graph.nodes[node].center;
    const Point target = std::holds_alternative<ArcRoute>(edge.route) ? arc_control_point(graph, edge)
                                                                       : graph.nodes[other].center;
    return normalized({target.x - here.x, target.y - here.y});
}

Point anchor_direction(Anchor anchor) {
    switch (anchor) {
        case Anchor::north: return {0, -1};
        case Anchor::east: return {1, 0};
        case Anchor::south: return {0, 1};
        case Anchor::west: return {-1, 0};
    }
    return {0, -1};
}

std::string_view to_string(Anchor anchor) {
    switch (anchor) {
        case Anchor::north: return "N";
        case Anchor::east: return "E";
        case Anchor::south: return "S";
        case Anchor::west: return "W";
    }
    return "N";
}

Anchor place_self_loop(const LayoutGraph& graph, std::string_view state) {
    const auto node = graph.find_node(state);
    if (!node) return Anchor::north;

    std::vector<Point> directions;
    for (const auto& edge : graph.edges) {
        if (edge.from == edge.to) continue;
        if (edge.from == *node || edge.to == *node) directions.push_back(departure_direction(graph, edge, *node));
    }

    constexpr std::array<Anchor, 4> order = {Anchor::north, Anchor::east, Anchor::south, Anchor::west};
    constexpr double tolerance = 1e-9;
    Anchor best = Anchor::north;
    double best_clearance = -1;
    for (const auto anchor : order) {
        double clearance = std::numbers::pi;
        for (const auto& d : directions) clearance = std::min(clearance, angle_between(anchor_direction(anchor), d));
        if (clearance > best_clearance + tolerance) {
            best_clearance = clearance;
            best = anchor;
        }
    }
    return best;
}

std::string serialize_layout(const LayoutGraph& graph) {
    std::string out = fmt::format("bounds {:.4f} {:.4f} {:.4f} {:.4f}\nstart {}\n", graph.bounds.min_x,
                                  graph.bounds.min_y, graph.bounds.width, graph.bounds.height, graph.start);
    for (const auto& node : graph.nodes) {
        out += fmt::format("node {} {:.4f} {:.4f} rank={} accepting={}\n", text::quote_if_needed(node.state),
                           node.center.x, node.center.y, node.rank, node.accepting ? 1 : 0);
    }
    for (const auto& edge : graph.edges) {
        std::string route;
        if (const auto* arc = std::get_if<ArcRoute>(&edge.route)) {
            route = fmt::format("arc {:.4f}", arc->bend);
        } else if (const auto* loop = std::get_if<SelfLoopRoute>(&edge.route)) {
            route = fmt::format("loop {}", to_string(loop->anchor));
        } else {
            route = "straight";
        }
        out += fmt::format("edge {} {} [{}] {}\n", edge.from, edge.to, text::join_quoted(edge.labels), route);
    }
    return out;
}

}  // namespace fsmr
