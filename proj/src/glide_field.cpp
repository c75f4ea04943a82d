#include "glide/glide_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glide/errors.hpp"
#include "glide/simd/kernels.hpp"

namespace glide {

void AircraftModel::validate(double max_wind_speed) const {
  if (const auto* c = std::get_if<ConstantGlide>(&mode)) {
    if (!(c->ratio > 0.0) || !std::isfinite(c->ratio)) throw validation_error("aircraft.glide_ratio", "must be positive");
    if (max_wind_speed > 0.0 && !custom)
      throw Error(ErrorCode::unsupported_configuration,
                  "aircraft: constant glide ratio cannot account for wind; use mode fixed-airspeed", "aircraft.mode");
    return;
  }
  const auto& f = std::get<FixedAirspeed>(mode);
  if (!(f.airspeed > 0.0) || !std::isfinite(f.airspeed)) throw validation_error("aircraft.airspeed", "must be positive");
  if (!(f.sink > 0.0) || !std::isfinite(f.sink)) throw validation_error("aircraft.sink", "must be positive");
  if (!(f.airspeed > max_wind_speed))
    throw validation_error("aircraft.airspeed", "must exceed the maximum wind speed (" + std::to_string(max_wind_speed) + ")");
}

double fixed_airspeed_glide_ratio(Vec2 wind, double airspeed, double sink, Vec2 direction) {
  const double d = direction.x * wind.x + direction.y * wind.y;
  const double disc = d * d - (wind.x * wind.x + wind.y * wind.y) + airspeed * airspeed;
  if (!(disc > 0.0))
    throw Error(ErrorCode::wind_exceeds_airspeed, "wind exceeds airspeed: ground track cannot be held");
  const double m = d + std::sqrt(disc);
  if (!(m > 0.0)) throw Error(ErrorCode::wind_exceeds_airspeed, "wind exceeds airspeed: ground track cannot be held");
  return m / sink;
}

DirectionTable::DirectionTable(int samples) {
  x.resize(samples);
  y.resize(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * kPi * k / samples;
    x[k] = std::cos(t);
    y[k] = std::sin(t);
  }
}

GlideField::GlideField(WindModel wind, AircraftModel aircraft, GridSpec domain, double reference_altitude)
    : wind_(std::move(wind)), aircraft_(std::move(aircraft)), domain_(domain) {
  if (!aircraft_.custom) {
    if (const auto* c = std::get_if<ConstantGlide>(&aircraft_.mode)) {
      g_min_ = g_max_ = c->ratio;
    } else {
      const auto& f = std::get<FixedAirspeed>(aircraft_.mode);
      const double w = wind_.max_speed();
      g_min_ = (f.airspeed - w) / f.sink;
      g_max_ = (f.airspeed + w) / f.sink;
    }
    return;
  }
  // Custom hook: bound by sampling nodes, directions and two altitudes.
  const DirectionTable dirs(64);
  const std::size_t n = domain_.node_count();
  const std::size_t stride = std::max<std::size_t>(1, n / 2048);
  g_min_ = kInfinity;
  g_max_ = 0.0;
  for (std::size_t node = 0; node < n; node += stride) {
    const Vec2 p = domain_.position(static_cast<NodeIndex>(node));
    for (double z : {0.0, reference_altitude}) {
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        const double g = evaluate_or_zero(p, z, {dirs.x[k], dirs.y[k]});
        if (g <= 0.0) continue;
        g_min_ = std::min(g_min_, g);
        g_max_ = std::max(g_max_, g);
      }
    }
  }
  if (!(g_max_ > 0.0)) throw validation_error("aircraft", "custom glide function is never positive");
}

double GlideField::evaluate(Vec2 x, double z, Vec2 direction) const {
  if (aircraft_.custom) {
    const double g = aircraft_.custom(x, z, direction, wind_.at(x, z));
    if (!(g > 0.0)) throw Error(ErrorCode::wind_exceeds_airspeed, "glide function non-positive in this direction");
    return g;
  }
  if (const auto* c = std::get_if<ConstantGlide>(&aircraft_.mode)) return c->ratio;
  const auto& f = std::get<FixedAirspeed>(aircraft_.mode);
  return fixed_airspeed_glide_ratio(wind_.at(x, z), f.airspeed, f.sink, direction);
}

double GlideField::evaluate_or_zero(Vec2 x, double z, Vec2 direction) const noexcept {
  if (aircraft_.custom) {
    try {
      const double g = aircraft_.custom(x, z, direction, wind_.at(x, z));
      return g > 0.0 ? g : 0.0;
    } catch (...) {
      return 0.0;
    }
  }
  if (const auto* c = std::get_if<ConstantGlide>(&aircraft_.mode)) return c->ratio;
  const auto& f = std::get<FixedAirspeed>(aircraft_.mode);
  const Vec2 w = wind_.at(x, z);
  const double d = direction.x * w.x + direction.y * w.y;
  const double disc = d * d - (w.x * w.x + w.y * w.y) + f.airspeed * f.airspeed;
  if (!(disc > 0.0)) return 0.0;
  const double m = d + std::sqrt(disc);
  return m > 0.0 ? m / f.sink : 0.0;
}

void GlideField::evaluate_directions(Vec2 x, double z, std::span<const double> dir_x, std::span<const double> dir_y,
                                     std::span<double> out) const {
  if (!aircraft_.custom) {
    if (const auto* c = std::get_if<ConstantGlide>(&aircraft_.mode)) {
      std::fill(out.begin(), out.end(), c->ratio);
      return;
    }
    const auto& f = std::get<FixedAirspeed>(aircraft_.mode);
    const Vec2 w = wind_.at(x, z);
    simd::fixed_airspeed_glide({w.x, w.y, f.airspeed, f.sink}, dir_x, dir_y, out);
    return;
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = evaluate_or_zero(x, z, {dir_x[k], dir_y[k]});
}

std::optional<double> GlideField::constant_ratio() const {
  if (aircraft_.custom || !isotropic()) return std::nullopt;
  return g_min_;
}

}  // namespace glide
