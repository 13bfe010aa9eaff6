#pragma once

#include <algorithm>
#include <cmath>

#include "motkit/errors.hpp"

namespace motkit {

// Axis-aligned box in pixel coordinates, stored as (left, top, width, height)
// to match the MOTChallenge file layout. Coordinates are real-valued; only the
// SVG overlay emitter rasterizes to integer pixels.
struct Box {
  double left = 0.0;
  double top = 0.0;
  double width = 0.0;
  double height = 0.0;

  double right() const { return left + width; }
  double bottom() const { return top + height; }
  double cx() const { return left + 0.5 * width; }
  double cy() const { return top + 0.5 * height; }
  double area() const { return width * height; }

  bool positive_area() const { return width > 0.0 && height > 0.0; }
  bool finite() const {
    return std::isfinite(left) && std::isfinite(top) && std::isfinite(width) &&
           std::isfinite(height);
  }

  static Box from_cxcywh(double cx, double cy, double w, double h) {
    return Box{cx - 0.5 * w, cy - 0.5 * h, w, h};
  }

  friend bool operator==(const Box& a, const Box& b) = default;
};

// Pixel dimensions of a frame; the clamping domain for patch regions.
struct FrameGeometry {
  int width = 0;
  int height = 0;
};

namespace detail {

// Shared elementwise formulas for the overlap measures. The batched kernels
// (scalar and SIMD) replicate this exact operation order, so results are
// bit-identical between the single-pair and matrix paths.
inline double pair_iou(double al, double at, double ar, double ab,  //
                       double bl, double bt, double br, double bb) {
  const double ix = std::max(al, bl);
  const double iy = std::max(at, bt);
  const double ix2 = std::min(ar, br);
  const double iy2 = std::min(ab, bb);
  const double iw = std::max(ix2 - ix, 0.0);
  const double ih = std::max(iy2 - iy, 0.0);
  const double inter = iw * ih;
  const double area_a = (ar - al) * (ab - at);
  const double area_b = (br - bl) * (bb - bt);
  const double uni = area_a + area_b - inter;
  return inter / uni;
}

inline double pair_giou(double al, double at, double ar, double ab,  //
                        double bl, double bt, double br, double bb) {
  const double ix = std::max(al, bl);
  const double iy = std::max(at, bt);
  const double ix2 = std::min(ar, br);
  const double iy2 = std::min(ab, bb);
  const double iw = std::max(ix2 - ix, 0.0);
  const double ih = std::max(iy2 - iy, 0.0);
  const double inter = iw * ih;
  const double area_a = (ar - al) * (ab - at);
  const double area_b = (br - bl) * (bb - bt);
  const double uni = area_a + area_b - inter;
  const double el = std::min(al, bl);
  const double et = std::min(at, bt);
  const double er = std::max(ar, br);
  const double eb = std::max(ab, bb);
  const double encl = (er - el) * (eb - et);
  return inter / uni - (encl - uni) / encl;
}

inline double pair_l1_cxcywh(double al, double at, double ar, double ab,  //
                             double bl, double bt, double br, double bb) {
  const double acx = 0.5 * (al + ar);
  const double acy = 0.5 * (at + ab);
  const double aw = ar - al;
  const double ah = ab - at;
  const double bcx = 0.5 * (bl + br);
  const double bcy = 0.5 * (bt + bb);
  const double bw = br - bl;
  const double bh = bb - bt;
  return std::abs(acx - bcx) + std::abs(acy - bcy) + std::abs(aw - bw) +
         std::abs(ah - bh);
}

}  // namespace detail

// Intersection over union of two positive-area boxes; 0 when disjoint.
double iou(const Box& a, const Box& b);

// Generalized IoU: iou - (|enclosing| - |union|) / |enclosing|, in (-1, 1].
double giou(const Box& a, const Box& b);

// Candidate box intersected with the frame rectangle. Throws OutOfFrameError
// when the candidate lies fully outside the frame (no valid crop exists).
Box patch_region(const Box& candidate, const FrameGeometry& frame);

}  // namespace motkit
