#include "fsmr/render.hpp"

#include "fsmr/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace fsmr {
namespace {

constexpr double margin = 24;
constexpr double arrow_length = 10;
constexpr double arrow_half_width = 5;
constexpr double loop_spread = 0.5236;  // 30 degrees
constexpr double ghost_opacity = 0.35;

std::string num(double v) {
    if (std::abs(v) < 0.005) v = 0;
    return fmt::format("{:.2f}", v);
}

std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string clock(Micros t) { return format_seconds(t) + "s"; }

Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(Point a, double k) { return {a.x * k, a.y * k}; }

Point unit(Point p) {
    const double length = std::hypot(p.x, p.y);
    return length == 0 ? Point{1, 0} : Point{p.x / length, p.y / length};
}

Point perpendicular(Point p) { return {p.y, -p.x}; }

std::string pt(Point p) { return num(p.x) + " " + num(p.y); }

// What changes from frame to frame.
struct SceneState {
    std::vector<bool> edge_highlight;
    std::optional<std::pair<std::size_t, std::size_t>> cell_highlight;
    std::vector<double> char_opacity;
    std::optional<Point> marker;  ///< pixels
    std::optional<std::size_t> verdict_node;
    Verdict verdict = Verdict::rejected;
};

// Elements that carry animation children in the animated document, keyed by element id.
using Injections = std::map<std::string, std::string>;

struct EdgeShape {
    std::string path;
    Point arrow_tip;
    Point arrow_direction;
    Point label;
};

class Composition {
public:
    Composition(const LayoutGraph& layout, const TableModel& table, const StyleConfig& style, std::u32string input,
                std::string title)
        : layout_(layout), table_(table), style_(style), input_(std::move(input)), title_(std::move(title)) {
        style_.validate();
        const double font = style_.font_size;
        char_width_ = 0.6 * font;
        row_height_ = 1.8 * font;

        std::size_t label_chars = 1;
        for (std::size_t r = 0; r < table_.rows.size(); ++r) {
            label_chars = std::max(label_chars, utf8::scalar_count(table_.rows[r]) + 3);
        }
        label_column_width_ = static_cast<double>(label_chars) * char_width_ + 16;
        std::size_t cell_chars = 1;
        for (const auto& c : table_.cells) cell_chars = std::max(cell_chars, utf8::scalar_count(c));
        cell_width_ = static_cast<double>(cell_chars) * char_width_ + 16;
        table_width_ = label_column_width_ + cell_width_ * static_cast<double>(table_.columns.size());
        table_height_ = row_height_ * static_cast<double>(table_.rows.size() + 1);

        const auto& b = layout_.bounds;
        diagram_pad_ = 2.5;
        diagram_width_ = (b.width + 2 * diagram_pad_) * style_.scale;
        diagram_height_ = (b.height + 2 * diagram_pad_) * style_.scale;
        diagram_x_ = margin + table_width_ + 2 * margin;
        diagram_y_ = margin;

        strip_char_width_ = 1.2 * font;
        strip_y_ = margin + std::max(table_height_, diagram_height_) + margin;
        const double strip_width = strip_char_width_ * static_cast<double>(input_.size());
        width_ = std::max(diagram_x_ + diagram_width_ + margin, strip_width + 2 * margin);
        height_ = strip_y_ + 2 * font + 2.5 * font + margin;
        strip_x_ = (width_ - strip_width) / 2;
    }

    Point node_px(std::size_t node) const { return to_px(layout_.nodes[node].center); }
    double radius_px() const { return node_radius * style_.scale; }
    const LayoutGraph& layout() const { return layout_; }
    const StyleConfig& style() const { return style_; }

    /// Point on an edge's path at parameter t in [0, 1] (centre to centre).
    Point edge_point(std::size_t edge_index, double t) const {
        const auto& e = layout_.edges[edge_index];
        const Point a = node_px(e.from);
        const Point b = node_px(e.to);
        if (e.from == e.to) return a;
        if (std::holds_alternative<ArcRoute>(e.route)) {
            const Point c = to_px(arc_control_point(layout_, e));
            const double u = 1 - t;
            return a * (u * u) + c * (2 * u * t) + b * (t * t);
        }
        return a + (b - a) * t;
    }

    /// Motion path (relative to the start node) from one end of an edge to the other.
    std::string motion_path(std::size_t edge_index) const {
        const auto& e = layout_.edges[edge_index];
        const Point origin = node_px(layout_.start);
        const Point a = node_px(e.from) - origin;
        const Point b = node_px(e.to) - origin;
        if (e.from != e.to && std::holds_alternative<ArcRoute>(e.route)) {
            const Point c = to_px(arc_control_point(layout_, e)) - origin;
            return fmt::format("M {} Q {} {}", pt(a), pt(c), pt(b));
        }
        return fmt::format("M {} L {}", pt(a), pt(b));
    }

    SceneState resting_state() const {
        SceneState s;
        s.edge_highlight.assign(layout_.edges.size(), false);
        s.char_opacity.assign(input_.size(), 1.0);
        return s;
    }

    std::string document(const SceneState& state, const Injections& injections = {}, std::string_view tail = {}) const {
        const auto& c = style_.colors;
        std::string out;
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += fmt::format(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
            "font-family=\"{}\" font-size=\"{}\">\n",
            num(width_), num(height_), num(width_), num(height_), escape(style_.font_family), num(style_.font_size));
        out += fmt::format("<title>{}</title>\n", escape(title_));
        out += fmt::format("<rect id=\"background\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", num(width_),
                           num(height_), c.background);
        write_table(out, state, injections);
        write_diagram(out, state, injections);
        write_strip(out, state, injections);
        write_verdict(out, state, injections);
        out += tail;
        out += "</svg>\n";
        return out;
    }

private:
    Point to_px(Point p) const {
        const auto& b = layout_.bounds;
        return {diagram_x_ + (p.x - b.min_x + diagram_pad_) * style_.scale,
                diagram_y_ + (p.y - b.min_y + diagram_pad_) * style_.scale};
    }

    static std::string injected(const Injections& injections, const std::string& id) {
        const auto it = injections.find(id);
        return it == injections.end() ? std::string{} : it->second;
    }

    void write_table(std::string& out, const SceneState& state, const Injections& injections) const {
        const auto& c = style_.colors;
        const double x0 = margin;
        const double y0 = margin;
        out += "<g id=\"table\">\n";
        out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"{}\"/>\n", num(x0), num(y0),
                           num(table_width_), num(row_height_), c.table_header, c.state_stroke);
        for (std::size_t col = 0; col < table_.columns.size(); ++col) {
            const double x = x0 + label_column_width_ + cell_width_ * static_cast<double>(col);
            out += fmt::format(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"{}\">{}</text>\n",
                num(x + cell_width_ / 2), num(y0 + row_height_ / 2), c.text, escape(utf8::encode(table_.columns[col])));
        }
        for (std::size_t row = 0; row < table_.rows.size(); ++row) {
            const double y = y0 + row_height_ * static_cast<double>(row + 1);
            std::string label;
            if (row == table_.start_row) label += "→";
            if (table_.accepting[row]) label += "*";
            label += table_.rows[row];
            out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"{}\"/>\n", num(x0),
                               num(y), num(label_column_width_), num(row_height_), c.table_header, c.state_stroke);
            out += fmt::format(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" dominant-baseline=\"central\" fill=\"{}\">{}</text>\n",
                num(x0 + label_column_width_ - 8), num(y + row_height_ / 2), c.text, escape(label));
            for (std::size_t col = 0; col < table_.columns.size(); ++col) {
                const double x = x0 + label_column_width_ + cell_width_ * static_cast<double>(col);
                const bool lit = state.cell_highlight == std::pair{row, col};
                const auto id = fmt::format("cell-{}-{}", row, col);
                out += fmt::format("<rect id=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"{}\"", id,
                                   num(x), num(y), num(cell_width_), num(row_height_), lit ? c.highlight : c.table_fill,
                                   c.state_stroke);
                const auto extra = injected(injections, id);
                out += extra.empty() ? "/>\n" : ">\n" + extra + "</rect>\n";
                out += fmt::format(
                    "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"{}\">{}</text>\n",
                    num(x + cell_width_ / 2), num(y + row_height_ / 2), c.text, escape(table_.cell(row, col)));
            }
        }
        out += "</g>\n";
    }

    EdgeShape edge_shape(const LayoutEdge& e) const {
        const double r = radius_px();
        const Point a = node_px(e.from);
        const Point b = node_px(e.to);
        const double label_offset = 0.7 * style_.font_size;
        EdgeShape shape;
        if (e.from == e.to) {
            const auto anchor = std::get<SelfLoopRoute>(e.route).anchor;
            const Point d = anchor_direction(anchor);
            const Point p = perpendicular(d);
            const Point s = a + (d * std::cos(loop_spread) - p * std::sin(loop_spread)) * r;
            const Point t = a + (d * std::cos(loop_spread) + p * std::sin(loop_spread)) * r;
            const Point c1 = a + (d * 2.6 - p * 1.1) * r;
            const Point c2 = a + (d * 2.6 + p * 1.1) * r;
            shape.arrow_direction = unit(t - c2);
            shape.arrow_tip = t;
            const Point line_end = t - shape.arrow_direction * (arrow_length * 0.8);
            shape.path = fmt::format("M {} C {} {} {}", pt(s), pt(c1), pt(c2), pt(line_end));
            shape.label = a + d * (2.2 * r + label_offset);
        } else if (std::holds_alternative<ArcRoute>(e.route)) {
            const Point c = to_px(arc_control_point(layout_, e));
            const Point s = a + unit(c - a) * r;
            const Point t = b + unit(c - b) * r;
            shape.arrow_direction = unit(t - c);
            shape.arrow_tip = t;
            const Point line_end = t - shape.arrow_direction * (arrow_length * 0.8);
            shape.path = fmt::format("M {} Q {} {}", pt(s), pt(c), pt(line_end));
            const Point mid = s * 0.25 + c * 0.5 + t * 0.25;
            const Point away = unit(c - (a + b) * 0.5);
            shape.label = mid + away * label_offset;
        } else {
            const Point u = unit(b - a);
            const Point s = a + u * r;
            const Point t = b - u * r;
            shape.arrow_direction = u;
            shape.arrow_tip = t;
            shape.path = fmt::format("M {} L {}", pt(s), pt(t - u * (arrow_length * 0.8)));
            Point n = perpendicular(u);
            if (n.y > 0 || (n.y == 0 && n.x < 0)) n = n * -1.0;
            shape.label = (s + t) * 0.5 + n * label_offset;
        }
        return shape;
    }

    static std::string arrowhead(Point tip, Point direction) {
        const Point base = tip - direction * arrow_length;
        const Point side = perpendicular(direction) * arrow_half_width;
        return fmt::format("M {} L {} L {} Z", pt(tip), pt(base + side), pt(base - side));
    }

    void write_diagram(std::string& out, const SceneState& state, const Injections& injections) const {
        const auto& c = style_.colors;
        const double r = radius_px();
        out += "<g id=\"diagram\">\n";

        const Point start = node_px(layout_.start);
        const Point start_tail = start - Point{r + 1.2 * style_.scale, 0};
        const Point start_tip = start - Point{r, 0};
        out += fmt::format(
            "<g id=\"start-arrow\" color=\"{}\"><path d=\"M {} L {}\" stroke=\"currentColor\" stroke-width=\"2\" "
            "fill=\"none\"/><path d=\"{}\" fill=\"currentColor\"/></g>\n",
            c.edge, pt(start_tail), pt(start_tip - Point{arrow_length * 0.8, 0}), arrowhead(start_tip, {1, 0}));

        for (std::size_t k = 0; k < layout_.edges.size(); ++k) {
            const auto& e = layout_.edges[k];
            const auto shape = edge_shape(e);
            const auto id = fmt::format("edge-{}", k);
            out += fmt::format("<g id=\"{}\" color=\"{}\">\n", id, state.edge_highlight[k] ? c.highlight : c.edge);
            out += fmt::format("<path d=\"{}\" stroke=\"currentColor\" stroke-width=\"2\" fill=\"none\"/>\n", shape.path);
            out += fmt::format("<path d=\"{}\" fill=\"currentColor\"/>\n", arrowhead(shape.arrow_tip, shape.arrow_direction));
            out += fmt::format(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"currentColor\">{}</text>\n",
                num(shape.label.x), num(shape.label.y), escape(e.label_text()));
            out += injected(injections, id);
            out += "</g>\n";
        }

        for (std::size_t n = 0; n < layout_.nodes.size(); ++n) {
            const auto& node = layout_.nodes[n];
            const Point p = node_px(n);
            std::string fill = c.state_fill;
            if (state.verdict_node == n) fill = state.verdict == Verdict::accepted ? c.accept : c.reject;
            const auto id = fmt::format("state-{}", n);
            out += fmt::format("<g id=\"{}\">\n", id);
            out += fmt::format("<circle id=\"{}-disc\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"2\"", id,
                               num(p.x), num(p.y), num(r), fill, c.state_stroke);
            const auto extra = injected(injections, id + "-disc");
            out += extra.empty() ? "/>\n" : ">\n" + extra + "</circle>\n";
            if (node.accepting) {
                out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                                   num(p.x), num(p.y), num(0.8 * r), c.accept_ring);
            }
            out += fmt::format(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"{}\">{}</text>\n",
                num(p.x), num(p.y), c.text, escape(node.state));
            out += "</g>\n";
        }

        const auto marker_extra = injected(injections, "marker");
        if (state.marker || !marker_extra.empty()) {
            const Point m = state.marker.value_or(start);
            out += fmt::format("<g id=\"marker\" transform=\"translate({} {})\">\n", num(m.x), num(m.y));
            out += fmt::format("<circle cx=\"0\" cy=\"0\" r=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"4\"/>\n",
                               num(1.25 * r), c.marker);
            out += marker_extra;
            out += "</g>\n";
        }
        out += "</g>\n";
    }

    void write_strip(std::string& out, const SceneState& state, const Injections& injections) const {
        const auto& c = style_.colors;
        out += "<g id=\"input\">\n";
        const double y = strip_y_ + style_.font_size;
        for (std::size_t i = 0; i < input_.size(); ++i) {
            const double x = strip_x_ + strip_char_width_ * (static_cast<double>(i) + 0.5);
            const auto id = fmt::format("char-{}", i);
            out += fmt::format(
                "<text id=\"{}\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"{}\" "
                "font-size=\"{}\" opacity=\"{}\">{}",
                id, num(x), num(y), c.text, num(1.4 * style_.font_size), num(state.char_opacity[i]),
                escape(utf8::encode(input_[i])));
            out += injected(injections, id);
            out += "</text>\n";
        }
        out += "</g>\n";
    }

    void write_verdict(std::string& out, const SceneState& state, const Injections& injections) const {
        const auto& c = style_.colors;
        const auto extra = injected(injections, "verdict");
        if (!state.verdict_node && extra.empty()) return;
        const bool accepted = state.verdict == Verdict::accepted;
        out += fmt::format(
            "<text id=\"verdict\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"{}\" "
            "font-size=\"{}\" font-weight=\"bold\" visibility=\"{}\">{}",
            num(width_ / 2), num(strip_y_ + 2 * style_.font_size + 1.6 * style_.font_size), accepted ? c.accept : c.reject,
            num(1.4 * style_.font_size), state.verdict_node ? "visible" : "hidden", accepted ? "ACCEPTED" : "REJECTED");
        out += extra;
        out += "</text>\n";
    }

    const LayoutGraph& layout_;
    const TableModel& table_;
    StyleConfig style_;
    std::u32string input_;
    std::string title_;

    double char_width_ = 0;
    double row_height_ = 0;
    double label_column_width_ = 0;
    double cell_width_ = 0;
    double table_width_ = 0;
    double table_height_ = 0;
    double diagram_pad_ = 0;
    double diagram_width_ = 0;
    double diagram_height_ = 0;
    double diagram_x_ = 0;
    double diagram_y_ = 0;
    double strip_char_width_ = 0;
    double strip_x_ = 0;
    double strip_y_ = 0;
    double width_ = 0;
    double height_ = 0;
};

// Group active at frame `index`; frames are always inside the timeline.
std::size_t group_at(const AnimationTimeline& timeline, std::size_t index, int fps) {
    for (std::size_t g = 0; g < timeline.groups.size(); ++g) {
        if (frame_in_span(index, fps, group_start(timeline.groups[g]), group_duration(timeline.groups[g]))) return g;
    }
    return timeline.groups.size() - 1;
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t frame_count(Micros total, int fps) {
    const auto scaled = static_cast<unsigned long long>(total.count()) * static_cast<unsigned long long>(fps);
    return static_cast<std::size_t>((scaled + 999'999) / 1'000'000);
}

bool frame_in_span(std::size_t index, int fps, Micros start, Micros duration) {
    // index / fps in [start, start + duration), compared exactly in integers.
    const auto t = static_cast<long long>(index) * 1'000'000;
    const auto lo = start.count() * fps;
    const auto hi = (start + duration).count() * fps;
    return lo <= t && t < hi;
}

std::string frame_file_name(std::size_t index) { return fmt::format("frame_{:06d}.svg", index + 1); }

std::string FrameManifest::serialize() const {
    std::string out = "fsmr-frames 1\n";
    out += fmt::format("fps: {}\n", fps);
    out += fmt::format("frames: {}\n", frame_count);
    out += "first: 1\n";
    out += fmt::format("pattern: {}\n", frame_pattern);
    out += fmt::format("duration: {}\n", format_seconds(duration));
    out += "# Frames are SVG; rasterize them before encoding, for example:\n";
    out += "#   for f in frame_*.svg; do rsvg-convert \"$f\" -o \"${f%.svg}.png\"; done\n";
    out += fmt::format("#   ffmpeg -framerate {} -start_number 1 -i frame_%06d.png -pix_fmt yuv420p simulation.mp4\n", fps);
    return out;
}

std::string render_static(const LayoutGraph& layout, const TableModel& table, const StyleConfig& style,
                          std::u32string_view input) {
    const Composition composition(layout, table, style, std::u32string(input), "state diagram");
    return composition.document(composition.resting_state());
}

struct FrameRenderer::Impl {
    Impl(const AnimationTimeline& t, const LayoutGraph& l, const TableModel& tb, const StyleConfig& s)
        : timeline(t), layout(l), table(tb), composition(layout, table, s, t.input, t.machine_id) {}

    AnimationTimeline timeline;
    LayoutGraph layout;
    TableModel table;
    Composition composition;
};

FrameRenderer::FrameRenderer(const AnimationTimeline& timeline, const LayoutGraph& layout, const TableModel& table,
                             const StyleConfig& style)
    : impl_(std::make_unique<Impl>(timeline, layout, table, style)) {}

FrameRenderer::~FrameRenderer() = default;
FrameRenderer::FrameRenderer(FrameRenderer&&) noexcept = default;
FrameRenderer& FrameRenderer::operator=(FrameRenderer&&) noexcept = default;

std::size_t FrameRenderer::frame_count() const {
    return fsmr::frame_count(impl_->timeline.total_duration(), impl_->composition.style().fps);
}

FrameManifest FrameRenderer::manifest() const {
    return {impl_->composition.style().fps, frame_count(), impl_->timeline.total_duration()};
}

std::string FrameRenderer::frame(std::size_t index) const {
    const auto& timeline = impl_->timeline;
    const auto& composition = impl_->composition;
    const int fps = composition.style().fps;
    const double settled = timeline.ghost_consumed ? ghost_opacity : 0.0;

    SceneState state = composition.resting_state();
    state.marker = composition.node_px(impl_->layout.start);
    const auto g = group_at(timeline, index, fps);
    const auto& group = timeline.groups[g];

    if (const auto* step = std::get_if<StepGroup>(&group)) {
        const double elapsed = static_cast<double>(static_cast<long long>(index) * 1'000'000 - step->start.count() * fps);
        const double progress = std::clamp(elapsed / static_cast<double>(step->duration.count() * fps), 0.0, 1.0);
        for (std::size_t i = 0; i < step->index; ++i) state.char_opacity[i] = settled;
        for (const auto& event : step->events) {
            if (const auto* e = std::get_if<ConsumeChar>(&event)) {
                state.char_opacity[e->position] = 1.0 - (1.0 - settled) * progress;
            } else if (const auto* e = std::get_if<HighlightEdge>(&event)) {
                state.edge_highlight[e->edge] = true;
                state.marker = composition.edge_point(e->edge, progress);
            } else if (const auto* e = std::get_if<HighlightCell>(&event)) {
                state.cell_highlight = std::pair{e->row_index, e->column_index};
            }
        }
    } else if (const auto* verdict = std::get_if<VerdictGroup>(&group)) {
        std::fill(state.char_opacity.begin(), state.char_opacity.end(), settled);
        const auto node = *impl_->layout.find_node(verdict->final_state);
        state.marker = composition.node_px(node);
        state.verdict_node = node;
        state.verdict = verdict->verdict;
    }
    return composition.document(state);
}

FrameSet render_frames(const AnimationTimeline& timeline, const LayoutGraph& layout, const TableModel& table,
                       const StyleConfig& style) {
    const FrameRenderer renderer(timeline, layout, table, style);
    FrameSet set;
    set.manifest = renderer.manifest();
    set.frames.reserve(set.manifest.frame_count);
    for (std::size_t i = 0; i < set.manifest.frame_count; ++i) set.frames.push_back(renderer.frame(i));
    return set;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputIoError(path.string(), "cannot open for writing");
    file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    file.close();
    if (!file) throw OutputIoError(path.string(), "write failed");
}

FrameManifest write_frames(const std::filesystem::path& directory, const AnimationTimeline& timeline,
                           const LayoutGraph& layout, const TableModel& table, const StyleConfig& style, unsigned jobs) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw OutputIoError(directory.string(), ec.message());

    const FrameRenderer renderer(timeline, layout, table, style);
    const auto manifest = renderer.manifest();
    const auto count = manifest.frame_count;
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));

    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto work = [&](unsigned worker) {
        try {
            for (std::size_t i = worker; i < count; i += workers) {
                write_text_file(directory / frame_file_name(i), renderer.frame(i));
            }
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    }
    if (failure) std::rethrow_exception(failure);

    write_text_file(directory / manifest_file_name, manifest.serialize());
    return manifest;
}

std::string render_animated_svg(const AnimationTimeline& timeline, const LayoutGraph& layout, const TableModel& table,
                                const StyleConfig& style) {
    const Composition composition(layout, table, style, timeline.input, timeline.machine_id);
    const auto& colors = composition.style().colors;
    const std::string settled = timeline.ghost_consumed ? num(ghost_opacity) : num(0);

    Injections injections;
    for (const auto& group : timeline.groups) {
        if (const auto* step = std::get_if<StepGroup>(&group)) {
            for (const auto& event : step->events) {
                const auto begin = clock(event_start(event));
                const auto dur = clock(event_duration(event));
                if (const auto* e = std::get_if<ConsumeChar>(&event)) {
                    injections[fmt::format("char-{}", e->position)] += fmt::format(
                        "<animate class=\"anim-consume\" attributeName=\"opacity\" from=\"1\" to=\"{}\" begin=\"{}\" "
                        "dur=\"{}\" fill=\"freeze\"/>",
                        settled, begin, dur);
                } else if (const auto* e = std::get_if<HighlightEdge>(&event)) {
                    injections[fmt::format("edge-{}", e->edge)] += fmt::format(
                        "<set class=\"anim-edge\" attributeName=\"color\" to=\"{}\" begin=\"{}\" dur=\"{}\"/>\n",
                        colors.highlight, begin, dur);
                    injections["marker"] += fmt::format(
                        "<animateMotion class=\"anim-marker\" path=\"{}\" begin=\"{}\" dur=\"{}\" fill=\"freeze\"/>\n",
                        composition.motion_path(e->edge), begin, dur);
                } else if (const auto* e = std::get_if<HighlightCell>(&event)) {
                    injections[fmt::format("cell-{}-{}", e->row_index, e->column_index)] += fmt::format(
                        "<set class=\"anim-cell\" attributeName=\"fill\" to=\"{}\" begin=\"{}\" dur=\"{}\"/>\n",
                        colors.highlight, begin, dur);
                }
            }
        } else if (const auto* verdict = std::get_if<VerdictGroup>(&group)) {
            const auto node = *layout.find_node(verdict->final_state);
            const auto color = verdict->verdict == Verdict::accepted ? colors.accept : colors.reject;
            const auto begin = clock(verdict->start);
            const auto dur = clock(verdict->duration);
            injections[fmt::format("state-{}-disc", node)] += fmt::format(
                "<set class=\"anim-verdict\" attributeName=\"fill\" to=\"{}\" begin=\"{}\" dur=\"{}\" fill=\"freeze\"/>\n",
                color, begin, dur);
            injections["verdict"] += fmt::format(
                "<set class=\"anim-verdict\" attributeName=\"visibility\" to=\"visible\" begin=\"{}\" dur=\"{}\" "
                "fill=\"freeze\"/>",
                begin, dur);
        }
    }

    SceneState state = composition.resting_state();
    state.marker = composition.node_px(layout.start);
    if (const auto* verdict = std::get_if<VerdictGroup>(&timeline.groups.back())) state.verdict = verdict->verdict;
    const auto tail = fmt::format(
        "<rect id=\"timeline-clock\" x=\"0\" y=\"0\" width=\"0\" height=\"0\" fill=\"none\">\n"
        "<animate class=\"anim-clock\" attributeName=\"x\" from=\"0\" to=\"0\" begin=\"0s\" dur=\"{}\" fill=\"freeze\"/>\n"
        "</rect>\n",
        clock(timeline.total_duration()));
    return composition.document(state, injections, tail);
}

}  // namespace fsmr
