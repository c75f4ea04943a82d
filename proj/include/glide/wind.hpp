#pragma once

#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "glide/geometry.hpp"
#include "glide/grid.hpp"

namespace glide {

/// Wind vector from speed and bearing. The bearing is the direction the air
/// moves toward, counterclockwise from east.
Vec2 wind_from_bearing(double speed, double bearing_deg);

struct ZeroWind {};

struct UniformWind {
  Vec2 velocity;
};

struct WindLayer {
  double altitude = 0.0;
  Vec2 velocity;
};

/// Piecewise-linear in altitude (component-wise), clamped outside the
/// breakpoint range. Breakpoints strictly increasing in altitude.
struct LayeredWind {
  std::vector<WindLayer> layers;
};

struct ScaleLayer {
  double altitude = 0.0;
  double scale = 1.0;
};

/// Per-node velocity on `grid`, bilinearly interpolated in space and scaled by
/// a piecewise-linear altitude profile (identity when `scaling` is empty).
struct GriddedWind {
  GridSpec grid;
  std::vector<Vec2> velocity;
  std::vector<ScaleLayer> scaling;
};

class WindModel {
 public:
  using Variant = std::variant<ZeroWind, UniformWind, LayeredWind, GriddedWind>;

  WindModel() = default;
  WindModel(Variant v) : model_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  template <class T>
    requires std::is_constructible_v<Variant, T> && (!std::is_same_v<std::decay_t<T>, Variant>) &&
             (!std::is_same_v<std::decay_t<T>, WindModel>)
  WindModel(T&& v) : model_(std::forward<T>(v)) {}  // NOLINT(google-explicit-constructor)

  Vec2 at(Vec2 position, double altitude) const;
  double max_speed() const;

  bool is_zero() const;
  /// Constant in position and altitude.
  bool is_uniform() const;

  const Variant& variant() const { return model_; }

  /// Throws a validation error naming the offending field.
  void validate() const;

 private:
  Variant model_{ZeroWind{}};
};

}  // namespace glide
