#include "motkit/overlay.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace motkit {

namespace {

long long px(double v) { return std::llround(v); }

// Golden-angle hue walk keeps adjacent ids visually distinct.
int id_hue(std::int64_t id) {
  return static_cast<int>((static_cast<unsigned long long>(id) * 137) % 360);
}

}  // namespace

std::string render_frame_svg(const FrameGeometry& frame,
                             std::span<const TrackEntry> gt,
                             std::span<const TrackEntry> results) {
  if (frame.width <= 0 || frame.height <= 0) {
    throw DomainError("frame dimensions must be positive");
  }
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << frame.width
      << "\" height=\"" << frame.height << "\" viewBox=\"0 0 " << frame.width << " "
      << frame.height << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << frame.width << "\" height=\""
      << frame.height << "\" fill=\"#101010\"/>\n";
  char buf[256];
  for (const TrackEntry& e : gt) {
    std::snprintf(buf, sizeof(buf),
                  "  <rect x=\"%lld\" y=\"%lld\" width=\"%lld\" height=\"%lld\" "
                  "fill=\"none\" stroke=\"#888888\" stroke-width=\"2\" "
                  "stroke-dasharray=\"6,4\"/>\n",
                  px(e.box.left), px(e.box.top), px(e.box.width), px(e.box.height));
    out << buf;
  }
  for (const TrackEntry& e : results) {
    std::snprintf(buf, sizeof(buf),
                  "  <rect x=\"%lld\" y=\"%lld\" width=\"%lld\" height=\"%lld\" "
                  "fill=\"none\" stroke=\"hsl(%d,70%%,55%%)\" stroke-width=\"3\"/>\n",
                  px(e.box.left), px(e.box.top), px(e.box.width), px(e.box.height),
                  id_hue(e.id));
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "  <text x=\"%lld\" y=\"%lld\" fill=\"hsl(%d,70%%,75%%)\" "
                  "font-size=\"16\" font-family=\"monospace\">%lld</text>\n",
                  px(e.box.left), px(e.box.top) - 4, id_hue(e.id),
                  static_cast<long long>(e.id));
    out << buf;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace motkit
