#pragma once

#include "fsmr/layout.hpp"
#include "fsmr/style.hpp"
#include "fsmr/timeline.hpp"

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace fsmr {

/// Figure-style composition: transition table on the left, state diagram on
/// the right, input strip centred underneath. Accepting states get a double
/// circle, the start state an arrow from the left.
std::string render_static(const LayoutGraph& layout, const TableModel& table, const StyleConfig& style,
                          std::u32string_view input = {});

/// Frames needed to cover `total` at `fps`: ceil(total * fps).
std::size_t frame_count(Micros total, int fps);

/// True when frame `index` (shown at index / fps seconds) falls in [start, start + duration).
bool frame_in_span(std::size_t index, int fps, Micros start, Micros duration);

/// 1-based, zero-padded: frame_000001.svg for index 0.
std::string frame_file_name(std::size_t index);

inline constexpr std::string_view frame_pattern = "frame_%06d.svg";
inline constexpr std::string_view manifest_file_name = "manifest.txt";

struct FrameManifest {
    int fps = 30;
    std::size_t frame_count = 0;
    Micros duration{0};

    /// Text form, including an encoding recipe for external tools.
    std::string serialize() const;
};

/// Renders individual frames of a timeline. Each frame is a pure function of
/// its index, so frames can be produced in any order or concurrently.
class FrameRenderer {
public:
    FrameRenderer(const AnimationTimeline& timeline, const LayoutGraph& layout, const TableModel& table,
                  const StyleConfig& style);
    ~FrameRenderer();
    FrameRenderer(FrameRenderer&&) noexcept;
    FrameRenderer& operator=(FrameRenderer&&) noexcept;

    std::size_t frame_count() const;
    FrameManifest manifest() const;
    std::string frame(std::size_t index) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct FrameSet {
    std::vector<std::string> frames;
    FrameManifest manifest;
};

FrameSet render_frames(const AnimationTimeline& timeline, const LayoutGraph& layout, const TableModel& table,
                       const StyleConfig& style);

/// Writes every frame plus manifest.txt into `directory` (created if needed)
/// using up to `jobs` threads. Output bytes do not depend on `jobs`.
/// Throws OutputIoError.
FrameManifest write_frames(const std::filesystem::path& directory, const AnimationTimeline& timeline,
                           const LayoutGraph& layout, const TableModel& table, const StyleConfig& style,
                           unsigned jobs = 1);

/// One self-contained SVG whose SMIL `set`/`animate` elements replay the
/// timeline. Animation elements carry a class naming their role:
/// anim-edge, anim-cell, anim-consume, anim-marker, anim-verdict, anim-clock.
std::string render_animated_svg(const AnimationTimeline& timeline, const LayoutGraph& layout, const TableModel& table,
                                const StyleConfig& style);

/// Writes `contents` to `path`, throwing OutputIoError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace fsmr
