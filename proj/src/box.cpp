#include "motkit/box.hpp"

namespace motkit {

namespace {

void require_valid(const Box& b, const char* which) {
  if (!b.finite()) {
    throw NumericError(std::string("non-finite ") + which + " box");
  }
  if (!b.positive_area()) {
    throw InvalidBoxError(std::string("non-positive area for ") + which + " box");
  }
}

}  // namespace

double iou(const Box& a, const Box& b) {
  require_valid(a, "first");
  require_valid(b, "second");
  return detail::pair_iou(a.left, a.top, a.right(), a.bottom(),  //
                          b.left, b.top, b.right(), b.bottom());
}

double giou(const Box& a, const Box& b) {
  require_valid(a, "first");
  require_valid(b, "second");
  return detail::pair_giou(a.left, a.top, a.right(), a.bottom(),  //
                           b.left, b.top, b.right(), b.bottom());
}

Box patch_region(const Box& candidate, const FrameGeometry& frame) {
  if (frame.width <= 0 || frame.height <= 0) {
    throw DomainError("frame dimensions must be positive");
  }
  if (!candidate.finite()) {
    throw NumericError("non-finite candidate box");
  }
  const double l = std::max(candidate.left, 0.0);
  const double t = std::max(candidate.top, 0.0);
  const double r = std::min(candidate.right(), static_cast<double>(frame.width));
  const double b = std::min(candidate.bottom(), static_cast<double>(frame.height));
  if (r <= l || b <= t) {
    throw OutOfFrameError("candidate box does not intersect the frame");
  }
  return Box{l, t, r - l, b - t};
}

}  // namespace motkit
