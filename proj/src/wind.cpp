#include "glide/wind.hpp"

#include <algorithm>
#include <cmath>

#include "glide/errors.hpp"

namespace glide {
namespace {

template <class Layer, class Value, class Get>
Value interpolate_layers(const std::vector<Layer>& layers, double altitude, Get get) {
  if (altitude <= layers.front().altitude) return get(layers.front());
  if (altitude >= layers.back().altitude) return get(layers.back());
  auto hi = std::upper_bound(layers.begin(), layers.end(), altitude,
                             [](double z, const Layer& l) { return z < l.altitude; });
  auto lo = hi - 1;
  const double t = (altitude - lo->altitude) / (hi->altitude - lo->altitude);
  return get(*lo) * (1.0 - t) + get(*hi) * t;
}

template <class Layer>
void check_increasing(const std::vector<Layer>& layers, const char* field) {
  if (layers.empty()) throw validation_error(field, "needs at least one breakpoint");
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (!std::isfinite(layers[k].altitude)) throw validation_error(field, "altitude must be finite");
    if (k > 0 && !(layers[k].altitude > layers[k - 1].altitude))
      throw validation_error(field, "breakpoint altitudes must be strictly increasing");
  }
}

bool finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

}  // namespace

Vec2 wind_from_bearing(double speed, double bearing_deg) {
  const double t = bearing_deg * kPi / 180.0;
  return {speed * std::cos(t), speed * std::sin(t)};
}

Vec2 WindModel::at(Vec2 position, double altitude) const {
  struct Visitor {
    Vec2 p;
    double z;
    Vec2 operator()(const ZeroWind&) const { return {}; }
    Vec2 operator()(const UniformWind& w) const { return w.velocity; }
    Vec2 operator()(const LayeredWind& w) const {
      return interpolate_layers<WindLayer, Vec2>(w.layers, z, [](const WindLayer& l) { return l.velocity; });
    }
    Vec2 operator()(const GriddedWind& w) const {
      const GridSpec& g = w.grid;
      const double fx = std::clamp((p.x - g.origin.x) / g.spacing, 0.0, g.n_cols - 1.0);
      const double fy = std::clamp((p.y - g.origin.y) / g.spacing, 0.0, g.n_rows - 1.0);
      const int i0 = std::min(static_cast<int>(fx), g.n_cols - 2);
      const int j0 = std::min(static_cast<int>(fy), g.n_rows - 2);
      const double tx = fx - i0;
      const double ty = fy - j0;
      const Vec2 v = (1 - tx) * (1 - ty) * w.velocity[g.index(i0, j0)] + tx * (1 - ty) * w.velocity[g.index(i0 + 1, j0)] +
                     (1 - tx) * ty * w.velocity[g.index(i0, j0 + 1)] + tx * ty * w.velocity[g.index(i0 + 1, j0 + 1)];
      if (w.scaling.empty()) return v;
      const double s =
          interpolate_layers<ScaleLayer, double>(w.scaling, z, [](const ScaleLayer& l) { return l.scale; });
      return s * v;
    }
  };
  return std::visit(Visitor{position, altitude}, model_);
}

double WindModel::max_speed() const {
  struct Visitor {
    double operator()(const ZeroWind&) const { return 0.0; }
    double operator()(const UniformWind& w) const { return norm(w.velocity); }
    double operator()(const LayeredWind& w) const {
      double m = 0.0;
      for (const auto& l : w.layers) m = std::max(m, norm(l.velocity));
      return m;
    }
    double operator()(const GriddedWind& w) const {
      double m = 0.0;
      for (const auto& v : w.velocity) m = std::max(m, norm(v));
      double s = w.scaling.empty() ? 1.0 : 0.0;
      for (const auto& l : w.scaling) s = std::max(s, std::abs(l.scale));
      return m * s;
    }
  };
  return std::visit(Visitor{}, model_);
}

bool WindModel::is_zero() const { return max_speed() == 0.0; }

bool WindModel::is_uniform() const {
  if (std::holds_alternative<ZeroWind>(model_) || std::holds_alternative<UniformWind>(model_)) return true;
  if (const auto* l = std::get_if<LayeredWind>(&model_)) {
    return std::all_of(l->layers.begin(), l->layers.end(),
                       [&](const WindLayer& w) { return w.velocity == l->layers.front().velocity; });
  }
  return is_zero();
}

void WindModel::validate() const {
  struct Visitor {
    void operator()(const ZeroWind&) const {}
    void operator()(const UniformWind& w) const {
      if (!finite(w.velocity)) throw validation_error("wind.speed", "must be finite");
    }
    void operator()(const LayeredWind& w) const {
      check_increasing(w.layers, "wind.layers");
      for (const auto& l : w.layers)
        if (!finite(l.velocity)) throw validation_error("wind.layers", "speed must be finite");
    }
    void operator()(const GriddedWind& w) const {
      w.grid.validate();
      if (w.velocity.size() != w.grid.node_count())
        throw validation_error("wind.vectors", "expected one vector per grid node");
      for (const auto& v : w.velocity)
        if (!finite(v)) throw validation_error("wind.vectors", "must be finite");
      if (!w.scaling.empty()) {
        check_increasing(w.scaling, "wind.layers");
        for (const auto& l : w.scaling)
          if (!std::isfinite(l.scale)) throw validation_error("wind.layers", "scale must be finite");
      }
    }
  };
  std::visit(Visitor{}, model_);
}

}  // namespace glide
