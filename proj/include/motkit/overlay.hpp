#pragma once

#include <span>
#include <string>

#include "motkit/mot_io.hpp"

namespace motkit {

// One SVG document for one frame: ground-truth boxes (dashed gray) and result
// boxes (solid, color keyed by a stable hash of the track id). This is the
// only place box coordinates are rasterized to integer pixels.
std::string render_frame_svg(const FrameGeometry& frame,
                             std::span<const TrackEntry> gt,
                             std::span<const TrackEntry> results);

}  // namespace motkit
