#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "glide/geometry.hpp"
#include "glide/grid.hpp"
#include "glide/wind.hpp"

namespace glide {

struct ConstantGlide {
  double ratio = 1.0;
};

/// Constant horizontal airspeed with the sink rate magnitude at that speed.
struct FixedAirspeed {
  double airspeed = 1.0;
  double sink = 1.0;
};

/// Optional user-supplied glide ratio g(position, altitude, direction, wind).
/// Must return a positive value, or 0 for directions that cannot be flown.
using GlideHook = std::function<double(Vec2 position, double altitude, Vec2 direction, Vec2 wind)>;

struct AircraftModel {
  std::variant<ConstantGlide, FixedAirspeed> mode{ConstantGlide{}};
  GlideHook custom;

  void validate(double max_wind_speed) const;
};

/// Ground-track glide ratio at fixed airspeed. Throws
/// ErrorCode::wind_exceeds_airspeed when the track cannot be held.
double fixed_airspeed_glide_ratio(Vec2 wind, double airspeed, double sink, Vec2 direction);

/// Direction-dependent glide ratio g(x, z, a_hat) over a grid domain.
class GlideField {
 public:
  GlideField(WindModel wind, AircraftModel aircraft, GridSpec domain, double reference_altitude = 0.0);

  /// Throws ErrorCode::wind_exceeds_airspeed where the direction cannot be flown.
  double evaluate(Vec2 x, double z, Vec2 direction) const;
  /// Same as evaluate() but returns 0 for infeasible directions.
  double evaluate_or_zero(Vec2 x, double z, Vec2 direction) const noexcept;

  /// Glide ratio for a batch of unit directions at one point (0 = infeasible).
  void evaluate_directions(Vec2 x, double z, std::span<const double> dir_x, std::span<const double> dir_y,
                           std::span<double> out) const;

  double g_min() const { return g_min_; }
  double g_max() const { return g_max_; }
  /// Anisotropy ratio g_max / g_min.
  double anisotropy() const { return g_max_ / g_min_; }
  bool isotropic() const { return g_max_ == g_min_; }

  /// The constant glide ratio when the field is isotropic and uniform.
  std::optional<double> constant_ratio() const;

  const WindModel& wind() const { return wind_; }
  const AircraftModel& aircraft() const { return aircraft_; }

 private:
  WindModel wind_;
  AircraftModel aircraft_;
  GridSpec domain_;
  double g_min_ = 1.0;
  double g_max_ = 1.0;
};

/// Evenly spaced unit directions starting at angle 0 (east), counterclockwise.
struct DirectionTable {
  std::vector<double> x;
  std::vector<double> y;
  explicit DirectionTable(int samples);
  std::size_t size() const { return x.size(); }
};

}  // namespace glide
