// AVX2 variants of the pairwise overlap kernels. These mirror the scalar
// reference operation-for-operation (no FMA, same evaluation order), so the
// results are IEEE-identical to the scalar backend; the equivalence tests
// assert exact equality.

#include <immintrin.h>

#include "motkit/kernels.hpp"

namespace motkit::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign_mask, v);
}

}  // namespace

void iou_matrix(const BoxArray& a, const BoxArray& b, double* out) {
  const std::size_t cols = b.size();
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double al = a.l[i], at = a.t[i], ar = a.r[i], ab = a.b[i];
    const __m256d val = _mm256_set1_pd(al);
    const __m256d vat = _mm256_set1_pd(at);
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vab = _mm256_set1_pd(ab);
    const __m256d area_a = _mm256_mul_pd(_mm256_sub_pd(var, val), _mm256_sub_pd(vab, vat));
    double* row = out + i * cols;
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      const __m256d bl = _mm256_loadu_pd(&b.l[j]);
      const __m256d bt = _mm256_loadu_pd(&b.t[j]);
      const __m256d br = _mm256_loadu_pd(&b.r[j]);
      const __m256d bb = _mm256_loadu_pd(&b.b[j]);
      const __m256d ix = _mm256_max_pd(val, bl);
      const __m256d iy = _mm256_max_pd(vat, bt);
      const __m256d ix2 = _mm256_min_pd(var, br);
      const __m256d iy2 = _mm256_min_pd(vab, bb);
      const __m256d iw = _mm256_max_pd(_mm256_sub_pd(ix2, ix), zero);
      const __m256d ih = _mm256_max_pd(_mm256_sub_pd(iy2, iy), zero);
      const __m256d inter = _mm256_mul_pd(iw, ih);
      const __m256d area_b = _mm256_mul_pd(_mm256_sub_pd(br, bl), _mm256_sub_pd(bb, bt));
      const __m256d uni = _mm256_sub_pd(_mm256_add_pd(area_a, area_b), inter);
      _mm256_storeu_pd(row + j, _mm256_div_pd(inter, uni));
    }
    for (; j < cols; ++j) {
      row[j] = detail::pair_iou(al, at, ar, ab, b.l[j], b.t[j], b.r[j], b.b[j]);
    }
  }
}

void giou_matrix(const BoxArray& a, const BoxArray& b, double* out) {
  const std::size_t cols = b.size();
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double al = a.l[i], at = a.t[i], ar = a.r[i], ab = a.b[i];
    const __m256d val = _mm256_set1_pd(al);
    const __m256d vat = _mm256_set1_pd(at);
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vab = _mm256_set1_pd(ab);
    const __m256d area_a = _mm256_mul_pd(_mm256_sub_pd(var, val), _mm256_sub_pd(vab, vat));
    double* row = out + i * cols;
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      const __m256d bl = _mm256_loadu_pd(&b.l[j]);
      const __m256d bt = _mm256_loadu_pd(&b.t[j]);
      const __m256d br = _mm256_loadu_pd(&b.r[j]);
      const __m256d bb = _mm256_loadu_pd(&b.b[j]);
      const __m256d ix = _mm256_max_pd(val, bl);
      const __m256d iy = _mm256_max_pd(vat, bt);
      const __m256d ix2 = _mm256_min_pd(var, br);
      const __m256d iy2 = _mm256_min_pd(vab, bb);
      const __m256d iw = _mm256_max_pd(_mm256_sub_pd(ix2, ix), zero);
      const __m256d ih = _mm256_max_pd(_mm256_sub_pd(iy2, iy), zero);
      const __m256d inter = _mm256_mul_pd(iw, ih);
      const __m256d area_b = _mm256_mul_pd(_mm256_sub_pd(br, bl), _mm256_sub_pd(bb, bt));
      const __m256d uni = _mm256_sub_pd(_mm256_add_pd(area_a, area_b), inter);
      const __m256d el = _mm256_min_pd(val, bl);
      const __m256d et = _mm256_min_pd(vat, bt);
      const __m256d er = _mm256_max_pd(var, br);
      const __m256d eb = _mm256_max_pd(vab, bb);
      const __m256d encl = _mm256_mul_pd(_mm256_sub_pd(er, el), _mm256_sub_pd(eb, et));
      const __m256d iou = _mm256_div_pd(inter, uni);
      const __m256d hull_gap = _mm256_div_pd(_mm256_sub_pd(encl, uni), encl);
      _mm256_storeu_pd(row + j, _mm256_sub_pd(iou, hull_gap));
    }
    for (; j < cols; ++j) {
      row[j] = detail::pair_giou(al, at, ar, ab, b.l[j], b.t[j], b.r[j], b.b[j]);
    }
  }
}

void l1_cxcywh_matrix(const BoxArray& a, const BoxArray& b, double* out) {
  const std::size_t cols = b.size();
  const __m256d half = _mm256_set1_pd(0.5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double al = a.l[i], at = a.t[i], ar = a.r[i], ab = a.b[i];
    const __m256d acx = _mm256_set1_pd(0.5 * (al + ar));
    const __m256d acy = _mm256_set1_pd(0.5 * (at + ab));
    const __m256d aw = _mm256_set1_pd(ar - al);
    const __m256d ah = _mm256_set1_pd(ab - at);
    double* row = out + i * cols;
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      const __m256d bl = _mm256_loadu_pd(&b.l[j]);
      const __m256d bt = _mm256_loadu_pd(&b.t[j]);
      const __m256d br = _mm256_loadu_pd(&b.r[j]);
      const __m256d bb = _mm256_loadu_pd(&b.b[j]);
      const __m256d bcx = _mm256_mul_pd(half, _mm256_add_pd(bl, br));
      const __m256d bcy = _mm256_mul_pd(half, _mm256_add_pd(bt, bb));
      const __m256d bw = _mm256_sub_pd(br, bl);
      const __m256d bh = _mm256_sub_pd(bb, bt);
      __m256d sum = abs_pd(_mm256_sub_pd(acx, bcx));
      sum = _mm256_add_pd(sum, abs_pd(_mm256_sub_pd(acy, bcy)));
      sum = _mm256_add_pd(sum, abs_pd(_mm256_sub_pd(aw, bw)));
      sum = _mm256_add_pd(sum, abs_pd(_mm256_sub_pd(ah, bh)));
      _mm256_storeu_pd(row + j, sum);
    }
    for (; j < cols; ++j) {
      row[j] = detail::pair_l1_cxcywh(al, at, ar, ab, b.l[j], b.t[j], b.r[j], b.b[j]);
    }
  }
}

}  // namespace motkit::kernels::avx2
