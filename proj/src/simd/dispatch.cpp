#include <cstdlib>
#include <cstring>

#include "glide/simd/kernels.hpp"

namespace glide::simd {

std::string_view to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
#if defined(__x86_64__) && defined(GLIDE_HAVE_AVX2_TU)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() {
  static const Backend chosen = [] {
    const char* forced = std::getenv("GLIDE_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return Backend::scalar;
    return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
  }();
  return chosen;
}

void fixed_airspeed_glide(const FixedAirspeedParams& p, std::span<const double> dir_x, std::span<const double> dir_y,
                          std::span<double> out) {
  if (active_backend() == Backend::avx2) return avx2::fixed_airspeed_glide(p, dir_x, dir_y, out);
  scalar::fixed_airspeed_glide(p, dir_x, dir_y, out);
}

std::size_t weighted_direction_argmax(double gx, double gy, std::span<const double> dir_x,
                                      std::span<const double> dir_y, std::span<const double> glide) {
  if (active_backend() == Backend::avx2) return avx2::weighted_direction_argmax(gx, gy, dir_x, dir_y, glide);
  return scalar::weighted_direction_argmax(gx, gy, dir_x, dir_y, glide);
}

void eikonal_update_batch(std::span<const double> up, std::span<const double> right, std::span<const double> down,
                          std::span<const double> left, double h_over_g, std::span<double> out) {
  if (active_backend() == Backend::avx2) return avx2::eikonal_update_batch(up, right, down, left, h_over_g, out);
  scalar::eikonal_update_batch(up, right, down, left, h_over_g, out);
}

ErrorSums relative_error(std::span<const double> approx, std::span<const double> oracle,
                         std::span<const std::uint8_t> include, std::span<double> rel, std::span<double> abs) {
  if (active_backend() == Backend::avx2) return avx2::relative_error(approx, oracle, include, rel, abs);
  return scalar::relative_error(approx, oracle, include, rel, abs);
}

}  // namespace glide::simd
