#include "motkit/kernels.hpp"

#include <atomic>

namespace motkit::kernels {

void BoxArray::reserve(std::size_t n) {
  l.reserve(n);
  t.reserve(n);
  r.reserve(n);
  b.reserve(n);
}

void BoxArray::push_back(const Box& box) {
  if (!box.finite()) {
    throw NumericError("non-finite box in batch");
  }
  if (!box.positive_area()) {
    throw InvalidBoxError("non-positive-area box in batch");
  }
  l.push_back(box.left);
  t.push_back(box.top);
  r.push_back(box.right());
  b.push_back(box.bottom());
}

BoxArray BoxArray::from(std::span<const Box> boxes) {
  BoxArray out;
  out.reserve(boxes.size());
  for (const Box& box : boxes) {
    out.push_back(box);
  }
  return out;
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

namespace scalar {

void iou_matrix(const BoxArray& a, const BoxArray& b, double* out) {
  const std::size_t cols = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double al = a.l[i], at = a.t[i], ar = a.r[i], ab = a.b[i];
    double* row = out + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = detail::pair_iou(al, at, ar, ab, b.l[j], b.t[j], b.r[j], b.b[j]);
    }
  }
}

void giou_matrix(const BoxArray& a, const BoxArray& b, double* out) {
  const std::size_t cols = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double al = a.l[i], at = a.t[i], ar = a.r[i], ab = a.b[i];
    double* row = out + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = detail::pair_giou(al, at, ar, ab, b.l[j], b.t[j], b.r[j], b.b[j]);
    }
  }
}

void l1_cxcywh_matrix(const BoxArray& a, const BoxArray& b, double* out) {
  const std::size_t cols = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double al = a.l[i], at = a.t[i], ar = a.r[i], ab = a.b[i];
    double* row = out + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = detail::pair_l1_cxcywh(al, at, ar, ab, b.l[j], b.t[j], b.r[j], b.b[j]);
    }
  }
}

}  // namespace scalar

namespace {

bool detect_avx2() {
#if MOTKIT_X86_64
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Backend> g_backend{detect_avx2() ? Backend::Avx2 : Backend::Scalar};

}  // namespace

bool avx2_available() {
  static const bool available = detect_avx2();
  return available;
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

bool set_backend(Backend backend) {
  if (backend == Backend::Avx2 && !avx2_available()) {
    return false;
  }
  g_backend.store(backend, std::memory_order_relaxed);
  return true;
}

void reset_backend() {
  g_backend.store(avx2_available() ? Backend::Avx2 : Backend::Scalar,
                  std::memory_order_relaxed);
}

void iou_matrix(const BoxArray& a, const BoxArray& b, double* out) {
#if MOTKIT_X86_64
  if (active_backend() == Backend::Avx2) {
    avx2::iou_matrix(a, b, out);
    return;
  }
#endif
  scalar::iou_matrix(a, b, out);
}

void giou_matrix(const BoxArray& a, const BoxArray& b, double* out) {
#if MOTKIT_X86_64
  if (active_backend() == Backend::Avx2) {
    avx2::giou_matrix(a, b, out);
    return;
  }
#endif
  scalar::giou_matrix(a, b, out);
}

void l1_cxcywh_matrix(const BoxArray& a, const BoxArray& b, double* out) {
#if MOTKIT_X86_64
  if (active_backend() == Backend::Avx2) {
    avx2::l1_cxcywh_matrix(a, b, out);
    return;
  }
#endif
  scalar::l1_cxcywh_matrix(a, b, out);
}

}  // namespace motkit::kernels
