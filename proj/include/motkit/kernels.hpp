#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "motkit/box.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define MOTKIT_X86_64 1
#else
#define MOTKIT_X86_64 0
#endif

namespace motkit::kernels {

// Structure-of-arrays box batch with precomputed edges, the input layout for
// the pairwise overlap kernels. Boxes are validated (finite, positive area)
// on insertion so the inner loops can run unchecked.
struct BoxArray {
  std::vector<double> l, t, r, b;

  std::size_t size() const { return l.size(); }
  bool empty() const { return l.empty(); }
  void reserve(std::size_t n);
  void push_back(const Box& box);
  static BoxArray from(std::span<const Box> boxes);
};

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend backend);

// Backend actually used by the dispatching entry points below. Defaults to
// the best supported one, detected once at first use.
Backend active_backend();

// Force a specific backend (test hook). Returns false and leaves the current
// selection unchanged when the requested backend is unsupported on this CPU.
bool set_backend(Backend backend);
void reset_backend();

bool avx2_available();

// Each fill writes a row-major a.size() x b.size() matrix into `out`
// (caller-allocated). Entry (i, j) is the measure between a[i] and b[j],
// bit-identical to the corresponding single-pair function in box.hpp.
void iou_matrix(const BoxArray& a, const BoxArray& b, double* out);
void giou_matrix(const BoxArray& a, const BoxArray& b, double* out);
void l1_cxcywh_matrix(const BoxArray& a, const BoxArray& b, double* out);

// Reference implementations; the dispatched variants above must match these
// exactly on every input.
namespace scalar {
void iou_matrix(const BoxArray& a, const BoxArray& b, double* out);
void giou_matrix(const BoxArray& a, const BoxArray& b, double* out);
void l1_cxcywh_matrix(const BoxArray& a, const BoxArray& b, double* out);
}  // namespace scalar

#if MOTKIT_X86_64
namespace avx2 {
void iou_matrix(const BoxArray& a, const BoxArray& b, double* out);
void giou_matrix(const BoxArray& a, const BoxArray& b, double* out);
void l1_cxcywh_matrix(const BoxArray& a, const BoxArray& b, double* out);
}  // namespace avx2
#endif

}  // namespace motkit::kernels
