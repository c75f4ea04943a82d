// AVX2 variants of the kernels in kernels_scalar.cpp. Compiled with -mavx2
// (never -mfma) so every lane performs the same IEEE operations as the
// reference loop.

#include <cmath>
#include <limits>

#include "glide/propagation.hpp"
#include "glide/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>

namespace glide::simd::avx2 {

void fixed_airspeed_glide(const FixedAirspeedParams& p, std::span<const double> dir_x, std::span<const double> dir_y,
                          std::span<double> out) {
  const double w2s = p.wind_x * p.wind_x + p.wind_y * p.wind_y;
  const double v2s = p.airspeed * p.airspeed;
  const __m256d wx = _mm256_set1_pd(p.wind_x);
  const __m256d wy = _mm256_set1_pd(p.wind_y);
  const __m256d w2 = _mm256_set1_pd(w2s);
  const __m256d v2 = _mm256_set1_pd(v2s);
  const __m256d sink = _mm256_set1_pd(p.sink);
  const __m256d zero = _mm256_setzero_pd();
  const std::size_t n = out.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d dx = _mm256_loadu_pd(dir_x.data() + k);
    const __m256d dy = _mm256_loadu_pd(dir_y.data() + k);
    const __m256d d = _mm256_add_pd(_mm256_mul_pd(dx, wx), _mm256_mul_pd(dy, wy));
    const __m256d disc = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(d, d), w2), v2);
    const __m256d ok_disc = _mm256_cmp_pd(disc, zero, _CMP_GT_OQ);
    const __m256d m = _mm256_add_pd(d, _mm256_sqrt_pd(_mm256_max_pd(disc, zero)));
    const __m256d ok = _mm256_and_pd(ok_disc, _mm256_cmp_pd(m, zero, _CMP_GT_OQ));
    _mm256_storeu_pd(out.data() + k, _mm256_and_pd(ok, _mm256_div_pd(m, sink)));
  }
  for (; k < n; ++k) {
    const double d = dir_x[k] * p.wind_x + dir_y[k] * p.wind_y;
    const double disc = d * d - w2s + v2s;
    if (!(disc > 0.0)) {
      out[k] = 0.0;
      continue;
    }
    const double m = d + std::sqrt(disc);
    out[k] = m > 0.0 ? m / p.sink : 0.0;
  }
}

std::size_t weighted_direction_argmax(double gx, double gy, std::span<const double> dir_x,
                                      std::span<const double> dir_y, std::span<const double> glide) {
  const std::size_t n = glide.size();
  const __m256d vgx = _mm256_set1_pd(gx);
  const __m256d vgy = _mm256_set1_pd(gy);
  __m256d best_v = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d best_i = _mm256_setzero_pd();
  __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d dx = _mm256_loadu_pd(dir_x.data() + k);
    const __m256d dy = _mm256_loadu_pd(dir_y.data() + k);
    const __m256d g = _mm256_loadu_pd(glide.data() + k);
    const __m256d v = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(vgx, dx), _mm256_mul_pd(vgy, dy)), g);
    const __m256d better = _mm256_cmp_pd(v, best_v, _CMP_GT_OQ);
    best_v = _mm256_blendv_pd(best_v, v, better);
    best_i = _mm256_blendv_pd(best_i, idx, better);
    idx = _mm256_add_pd(idx, four);
  }
  alignas(32) double lv[4];
  alignas(32) double li[4];
  _mm256_store_pd(lv, best_v);
  _mm256_store_pd(li, best_i);
  double bv = -std::numeric_limits<double>::infinity();
  std::size_t bi = 0;
  bool have = false;
  for (int l = 0; l < 4; ++l) {
    if (static_cast<std::size_t>(l) >= k) break;
    const auto li_idx = static_cast<std::size_t>(li[l]);
    if (!have || lv[l] > bv || (lv[l] == bv && li_idx < bi)) {
      bv = lv[l];
      bi = li_idx;
      have = true;
    }
  }
  for (; k < n; ++k) {
    const double v = (gx * dir_x[k] + gy * dir_y[k]) * glide[k];
    if (!have || v > bv) {
      bv = v;
      bi = k;
      have = true;
    }
  }
  return bi;
}

void eikonal_update_batch(std::span<const double> up, std::span<const double> right, std::span<const double> down,
                          std::span<const double> left, double h_over_g, std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d hg = _mm256_set1_pd(h_over_g);
  const __m256d two_hg2 = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), hg), hg);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d ux = _mm256_min_pd(_mm256_loadu_pd(right.data() + k), _mm256_loadu_pd(left.data() + k));
    const __m256d uy = _mm256_min_pd(_mm256_loadu_pd(up.data() + k), _mm256_loadu_pd(down.data() + k));
    const __m256d d = _mm256_sub_pd(ux, uy);
    const __m256d quad_ok = _mm256_cmp_pd(_mm256_andnot_pd(sign, d), hg, _CMP_LE_OQ);
    const __m256d rad = _mm256_sub_pd(two_hg2, _mm256_mul_pd(d, d));
    const __m256d quad =
        _mm256_mul_pd(half, _mm256_add_pd(_mm256_add_pd(ux, uy), _mm256_sqrt_pd(_mm256_and_pd(quad_ok, rad))));
    const __m256d lin = _mm256_add_pd(_mm256_min_pd(ux, uy), hg);
    _mm256_storeu_pd(out.data() + k, _mm256_blendv_pd(lin, quad, quad_ok));
  }
  for (; k < n; ++k) out[k] = eikonal_update_hg(up[k], right[k], down[k], left[k], h_over_g);
}

ErrorSums relative_error(std::span<const double> approx, std::span<const double> oracle,
                         std::span<const std::uint8_t> include, std::span<double> rel, std::span<double> abs) {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t n = approx.size();
  __m256d max_rel = _mm256_set1_pd(-inf);
  __m256d sum_rel = _mm256_setzero_pd();
  __m256d max_abs = _mm256_setzero_pd();
  __m256d min_signed = _mm256_set1_pd(inf);
  const __m256d vnan = _mm256_set1_pd(nan);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vinf = _mm256_set1_pd(inf);
  const __m256d vninf = _mm256_set1_pd(-inf);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t included = 0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    std::uint32_t bytes;
    __builtin_memcpy(&bytes, include.data() + k, 4);
    const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(bytes)));
    const __m256d on = _mm256_castsi256_pd(_mm256_cmpgt_epi64(wide, _mm256_setzero_si256()));
    included += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(on))));
    const __m256d a = _mm256_loadu_pd(approx.data() + k);
    const __m256d o = _mm256_loadu_pd(oracle.data() + k);
    const __m256d e = _mm256_sub_pd(a, o);
    const __m256d r = _mm256_div_pd(e, o);
    _mm256_storeu_pd(rel.data() + k, _mm256_blendv_pd(vnan, r, on));
    _mm256_storeu_pd(abs.data() + k, _mm256_blendv_pd(vnan, e, on));
    max_rel = _mm256_max_pd(_mm256_blendv_pd(vninf, r, on), max_rel);
    sum_rel = _mm256_add_pd(sum_rel, _mm256_blendv_pd(vzero, r, on));
    max_abs = _mm256_max_pd(_mm256_blendv_pd(vzero, _mm256_andnot_pd(sign, e), on), max_abs);
    min_signed = _mm256_min_pd(_mm256_blendv_pd(vinf, e, on), min_signed);
  }
  alignas(32) double mr[4], sr[4], ma[4], ms[4];
  _mm256_store_pd(mr, max_rel);
  _mm256_store_pd(sr, sum_rel);
  _mm256_store_pd(ma, max_abs);
  _mm256_store_pd(ms, min_signed);
  for (; k < n; ++k) {
    const int l = static_cast<int>(k & 3);
    if (!include[k]) {
      rel[k] = nan;
      abs[k] = nan;
      continue;
    }
    const double e = approx[k] - oracle[k];
    const double r = e / oracle[k];
    rel[k] = r;
    abs[k] = e;
    ++included;
    if (r > mr[l]) mr[l] = r;
    sr[l] += r;
    const double ae = std::fabs(e);
    if (ae > ma[l]) ma[l] = ae;
    if (e < ms[l]) ms[l] = e;
  }
  ErrorSums s;
  s.included = included;
  s.max_rel = std::max(std::max(mr[0], mr[1]), std::max(mr[2], mr[3]));
  s.sum_rel = (sr[0] + sr[1]) + (sr[2] + sr[3]);
  s.max_abs = std::max(std::max(ma[0], ma[1]), std::max(ma[2], ma[3]));
  s.min_signed = std::min(std::min(ms[0], ms[1]), std::min(ms[2], ms[3]));
  if (included == 0) {
    s.max_rel = 0.0;
    s.min_signed = 0.0;
  }
  return s;
}

}  // namespace glide::simd::avx2

#else

// Non-x86 builds: the AVX2 entry points forward to the reference kernels and
// backend_available(avx2) reports false.
namespace glide::simd::avx2 {
void fixed_airspeed_glide(const FixedAirspeedParams& p, std::span<const double> dir_x, std::span<const double> dir_y,
                          std::span<double> out) {
  scalar::fixed_airspeed_glide(p, dir_x, dir_y, out);
}
std::size_t weighted_direction_argmax(double gx, double gy, std::span<const double> dir_x,
                                      std::span<const double> dir_y, std::span<const double> glide) {
  return scalar::weighted_direction_argmax(gx, gy, dir_x, dir_y, glide);
}
void eikonal_update_batch(std::span<const double> up, std::span<const double> right, std::span<const double> down,
                          std::span<const double> left, double h_over_g, std::span<double> out) {
  scalar::eikonal_update_batch(up, right, down, left, h_over_g, out);
}
ErrorSums relative_error(std::span<const double> approx, std::span<const double> oracle,
                         std::span<const std::uint8_t> include, std::span<double> rel, std::span<double> abs) {
  return scalar::relative_error(approx, oracle, include, rel, abs);
}
}  // namespace glide::simd::avx2

#endif
