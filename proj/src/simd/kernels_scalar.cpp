// Scalar reference kernels. The AVX2 variants must reproduce these results
// bit for bit, so reductions here accumulate in four interleaved lanes the
// same way the vector code does.

#include <cmath>
#include <limits>

#include "glide/propagation.hpp"
#include "glide/simd/kernels.hpp"

namespace glide::simd::scalar {

void fixed_airspeed_glide(const FixedAirspeedParams& p, std::span<const double> dir_x, std::span<const double> dir_y,
                          std::span<double> out) {
  const double w2 = p.wind_x * p.wind_x + p.wind_y * p.wind_y;
  const double v2 = p.airspeed * p.airspeed;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double d = dir_x[k] * p.wind_x + dir_y[k] * p.wind_y;
    const double disc = d * d - w2 + v2;
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
  std::size_t best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < glide.size(); ++k) {
    const double v = (gx * dir_x[k] + gy * dir_y[k]) * glide[k];
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  return best;
}

void eikonal_update_batch(std::span<const double> up, std::span<const double> right, std::span<const double> down,
                          std::span<const double> left, double h_over_g, std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = eikonal_update_hg(up[k], right[k], down[k], left[k], h_over_g);
}

ErrorSums relative_error(std::span<const double> approx, std::span<const double> oracle,
                         std::span<const std::uint8_t> include, std::span<double> rel, std::span<double> abs) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  double max_rel[4], sum_rel[4], max_abs[4], min_signed[4];
  for (int l = 0; l < 4; ++l) {
    max_rel[l] = -std::numeric_limits<double>::infinity();
    sum_rel[l] = 0.0;
    max_abs[l] = 0.0;
    min_signed[l] = std::numeric_limits<double>::infinity();
  }
  std::size_t included = 0;
  for (std::size_t k = 0; k < approx.size(); ++k) {
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
    if (r > max_rel[l]) max_rel[l] = r;
    sum_rel[l] += r;
    const double ae = std::fabs(e);
    if (ae > max_abs[l]) max_abs[l] = ae;
    if (e < min_signed[l]) min_signed[l] = e;
  }
  ErrorSums s;
  s.included = included;
  s.max_rel = std::max(std::max(max_rel[0], max_rel[1]), std::max(max_rel[2], max_rel[3]));
  s.sum_rel = (sum_rel[0] + sum_rel[1]) + (sum_rel[2] + sum_rel[3]);
  s.max_abs = std::max(std::max(max_abs[0], max_abs[1]), std::max(max_abs[2], max_abs[3]));
  s.min_signed = std::min(std::min(min_signed[0], min_signed[1]), std::min(min_signed[2], min_signed[3]));
  if (included == 0) {
    s.max_rel = 0.0;
    s.min_signed = 0.0;
  }
  return s;
}

}  // namespace glide::simd::scalar
