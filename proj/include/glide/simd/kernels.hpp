#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and an AVX2 variant; the public entry points dispatch at
// runtime on CPU support. The variants are bit-identical on the same inputs
// (no FMA contraction, IEEE sqrt/div in both).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace glide::simd {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend b);

/// Backend the dispatching entry points use. AVX2 when the CPU supports it,
/// unless the environment variable GLIDE_SIMD=scalar forces the reference path.
Backend active_backend();
bool backend_available(Backend b);

/// Fixed-airspeed glide ratio for a batch of unit ground-track directions
/// under one wind vector: g = (d.W + sqrt((d.W)^2 - |W|^2 + v^2)) / sink.
/// Writes 0 where the ground track cannot be held (non-positive discriminant
/// or non-positive ground speed).
struct FixedAirspeedParams {
  double wind_x;
  double wind_y;
  double airspeed;
  double sink;
};
void fixed_airspeed_glide(const FixedAirspeedParams& p, std::span<const double> dir_x, std::span<const double> dir_y,
                          std::span<double> out);

/// Index k maximizing (gx*dir_x[k] + gy*dir_y[k]) * glide[k]; lowest index on
/// ties. Requires a non-empty batch.
std::size_t weighted_direction_argmax(double gx, double gy, std::span<const double> dir_x,
                                      std::span<const double> dir_y, std::span<const double> glide);

/// Batched isotropic eikonal update over neighbor quadruples (+inf for absent).
void eikonal_update_batch(std::span<const double> up, std::span<const double> right, std::span<const double> down,
                          std::span<const double> left, double h_over_g, std::span<double> out);

/// Per-node error of an approximation against an oracle. Nodes with
/// include[k] == 0 get NaN in rel/abs and are skipped by the summary.
struct ErrorSums {
  double max_rel = 0.0;
  double sum_rel = 0.0;
  double max_abs = 0.0;
  double min_signed = 0.0;  ///< min(approx - oracle) over included nodes
  std::size_t included = 0;
};
ErrorSums relative_error(std::span<const double> approx, std::span<const double> oracle,
                         std::span<const std::uint8_t> include, std::span<double> rel, std::span<double> abs);

// Explicit variants, exposed for equivalence testing.
namespace scalar {
void fixed_airspeed_glide(const FixedAirspeedParams& p, std::span<const double> dir_x, std::span<const double> dir_y,
                          std::span<double> out);
std::size_t weighted_direction_argmax(double gx, double gy, std::span<const double> dir_x,
                                      std::span<const double> dir_y, std::span<const double> glide);
void eikonal_update_batch(std::span<const double> up, std::span<const double> right, std::span<const double> down,
                          std::span<const double> left, double h_over_g, std::span<double> out);
ErrorSums relative_error(std::span<const double> approx, std::span<const double> oracle,
                         std::span<const std::uint8_t> include, std::span<double> rel, std::span<double> abs);
}  // namespace scalar

namespace avx2 {
void fixed_airspeed_glide(const FixedAirspeedParams& p, std::span<const double> dir_x, std::span<const double> dir_y,
                          std::span<double> out);
std::size_t weighted_direction_argmax(double gx, double gy, std::span<const double> dir_x,
                                      std::span<const double> dir_y, std::span<const double> glide);
void eikonal_update_batch(std::span<const double> up, std::span<const double> right, std::span<const double> down,
                          std::span<const double> left, double h_over_g, std::span<double> out);
ErrorSums relative_error(std::span<const double> approx, std::span<const double> oracle,
                         std::span<const std::uint8_t> include, std::span<double> rel, std::span<double> abs);
}  // namespace avx2

}  // namespace glide::simd
