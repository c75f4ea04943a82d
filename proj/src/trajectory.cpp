#include "glide/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "glide/errors.hpp"
#include "glide/simd/kernels.hpp"

namespace glide {

std::string_view to_string(TrajectoryKind k) {
  return k == TrajectoryKind::grrp_optimal ? "grrp-optimal" : "mrap-feasible";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::reached_origin: return "reached-origin";
    case Termination::max_steps: return "max-steps";
    case Termination::stalled: return "stalled";
  }
  return "stalled";
}

namespace {

enum class Stencil { central, upwind };

/// Nodal gradient by central differences, one-sided next to +inf or the
/// grid edge. Upwind takes the one-sided difference toward the smaller
/// neighbor, which keeps terrain-clamped cliffs out of the estimate. Empty
/// when neither axis has a finite difference.
std::optional<Vec2> node_gradient(const GridSpec& grid, const std::vector<double>& f, int i, int j, Stencil st) {
  const double c = f[grid.index(i, j)];
  if (!std::isfinite(c)) return std::nullopt;
  auto axis = [&](int di, int dj) -> std::optional<double> {
    const int ia = i - di, ja = j - dj, ib = i + di, jb = j + dj;
    const bool has_a = ia >= 0 && ja >= 0 && ia < grid.n_cols && ja < grid.n_rows && std::isfinite(f[grid.index(ia, ja)]);
    const bool has_b = ib >= 0 && jb >= 0 && ib < grid.n_cols && jb < grid.n_rows && std::isfinite(f[grid.index(ib, jb)]);
    if (has_a && has_b) {
      const double fa = f[grid.index(ia, ja)], fb = f[grid.index(ib, jb)];
      if (st == Stencil::central) return (fb - fa) / (2.0 * grid.spacing);
      if (std::min(fa, fb) >= c) return 0.0;
      return fa < fb ? (c - fa) / grid.spacing : (fb - c) / grid.spacing;
    }
    if (has_b) return (f[grid.index(ib, jb)] - c) / grid.spacing;
    if (has_a) return (c - f[grid.index(ia, ja)]) / grid.spacing;
    return std::nullopt;
  };
  const auto gx = axis(1, 0);
  const auto gy = axis(0, 1);
  if (!gx && !gy) return std::nullopt;
  return Vec2{gx.value_or(0.0), gy.value_or(0.0)};
}

/// Bilinear blend of the nodal gradients of the cell containing p, skipping
/// corners where the gradient is undefined.
std::optional<Vec2> gradient_at(const GridSpec& grid, const std::vector<double>& f, Vec2 p, Stencil st) {
  const double fx = std::clamp((p.x - grid.origin.x) / grid.spacing, 0.0, grid.n_cols - 1.0);
  const double fy = std::clamp((p.y - grid.origin.y) / grid.spacing, 0.0, grid.n_rows - 1.0);
  const int i0 = std::min(static_cast<int>(fx), grid.n_cols - 2);
  const int j0 = std::min(static_cast<int>(fy), grid.n_rows - 2);
  const double tx = fx - i0, ty = fy - j0;
  Vec2 acc;
  double wsum = 0.0;
  for (int k = 0; k < 4; ++k) {
    const int di = k & 1, dj = k >> 1;
    const double w = (di ? tx : 1.0 - tx) * (dj ? ty : 1.0 - ty);
    const auto g = node_gradient(grid, f, i0 + di, j0 + dj, st);
    if (!g) continue;
    acc += w * *g;
    wsum += w;
  }
  if (wsum <= 1e-12) {
    for (int k = 0; k < 4; ++k)
      if (auto g = node_gradient(grid, f, i0 + (k & 1), j0 + (k >> 1), st)) return g;
    return std::nullopt;
  }
  return (1.0 / wsum) * acc;
}

Vec2 unit_gradient(const GridSpec& grid, const std::vector<double>& f, Vec2 y, Stencil st) {
  const auto g = gradient_at(grid, f, y, st);
  if (!g || !(norm(*g) > 1e-12)) throw Error(ErrorCode::infeasible, "direction undefined: no finite gradient here");
  return normalized(*g);
}

struct Integration {
  std::vector<Vec2> points;  // from the far end toward the origin
  Termination termination = Termination::stalled;
};

/// Bilinear weight of the impassable corners around p.
double obstacle_weight(const GridSpec& grid, const std::vector<double>& elevation, Vec2 p) {
  const double fx = std::clamp((p.x - grid.origin.x) / grid.spacing, 0.0, grid.n_cols - 1.0);
  const double fy = std::clamp((p.y - grid.origin.y) / grid.spacing, 0.0, grid.n_rows - 1.0);
  const int i0 = std::min(static_cast<int>(fx), grid.n_cols - 2);
  const int j0 = std::min(static_cast<int>(fy), grid.n_rows - 2);
  const double tx = fx - i0, ty = fy - j0;
  double w = 0.0;
  for (int k = 0; k < 4; ++k) {
    const int di = k & 1, dj = k >> 1;
    if (std::isinf(elevation[grid.index(i0 + di, j0 + dj)])) w += (di ? tx : 1.0 - tx) * (dj ? ty : 1.0 - ty);
  }
  return w;
}

/// Midpoint integration of dp/du = -dir(p) until p is within `stop_radius`
/// of `origin`. `value` is +inf where the altitude would be below the
/// terrain. Stalls when `value` stops decreasing or the path runs into
/// an impassable cell. When a midpoint step is blocked or lowers `value` by
/// less than `min_drop`, the steepest single-step descent of `value` is
/// taken instead.
Integration integrate(const GridSpec& grid, const std::vector<double>& elevation, Vec2 from, Vec2 origin, double step,
                      double stop_radius, double min_drop, const std::function<Vec2(Vec2)>& dir,
                      const std::function<double(Vec2)>& value) {
  auto blocked = [&](Vec2 p) { return !grid.contains(p) || obstacle_weight(grid, elevation, p) >= 0.75; };
  auto value_at = [&](Vec2 p) { return blocked(p) ? kInfinity : value(p); };
  static const DirectionTable descent(720);
  double last = value(from);
  Integration out;
  out.points.push_back(from);
  const std::size_t max_steps = 50 * static_cast<std::size_t>(grid.n_cols + grid.n_rows);
  Vec2 p = from;
  for (;;) {
    if (distance(p, origin) <= stop_radius) {
      out.termination = Termination::reached_origin;
      return out;
    }
    Vec2 next;
    double v = kInfinity;
    try {
      const Vec2 k1 = dir(p);
      const Vec2 mid = p - (0.5 * step) * k1;
      if (!blocked(mid)) {
        next = p - step * dir(mid);
        v = value_at(next);
      }
    } catch (const Error&) {
    }
    if (!(v < last) || !(last - v >= min_drop)) {
      // Probing a few steps ahead gets across the plateaus that renormalized
      // interpolation leaves next to +inf corners.
      double best = kInfinity;
      for (std::size_t k = 0; k < descent.size(); ++k) {
        const Vec2 d{descent.x[k], descent.y[k]};
        const double v1 = value_at(p - step * d);
        if (!(v1 <= last)) continue;
        double ahead = v1;
        for (int r = 2; r <= 4 && ahead >= last; ++r) ahead = std::min(ahead, value_at(p - (r * step) * d));
        if (ahead < best || (ahead == best && v1 < v)) {
          best = ahead;
          v = v1;
          next = p - step * d;
        }
      }
      if (!(best < last)) return out;
    }
    if (!(v <= last)) return out;
    p = next;
    last = v;
    out.points.push_back(p);
    if (out.points.size() > max_steps) {
      out.termination = Termination::max_steps;
      return out;
    }
  }
}

/// Straight connector from `a` to `b` with vertices no further apart than `step`.
void append_connector(std::vector<TrajectoryVertex>& v, TrajectoryVertex a, TrajectoryVertex b, double step) {
  const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a.position, b.position) / step)));
  for (int k = 1; k <= pieces; ++k) {
    const double t = static_cast<double>(k) / pieces;
    v.push_back({a.position + t * (b.position - a.position), a.altitude + t * (b.altitude - a.altitude)});
  }
}

double arc_length(const std::vector<TrajectoryVertex>& v) {
  double s = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) s += distance(v[k - 1].position, v[k].position);
  return s;
}

}  // namespace

Vec2 direction_field_grrp(const GrrpResult& result, const Scenario& s, const GlideField& field, Vec2 y) {
  if (s.wind.is_zero() && field.isotropic()) return unit_gradient(s.grid, result.U, y, Stencil::central);
  const auto grad = gradient_at(s.grid, result.U, y, Stencil::central);
  if (!grad || !(norm(*grad) > 1e-12)) throw Error(ErrorCode::infeasible, "direction undefined: no finite gradient here");
  const double u = sample_bilinear(s.grid, result.U, y);
  thread_local DirectionTable table(s.options.direction_samples);
  if (table.size() != static_cast<std::size_t>(s.options.direction_samples)) table = DirectionTable(s.options.direction_samples);
  std::vector<double> g(table.size());
  field.evaluate_directions(y, s.grrp().z0 - u, table.x, table.y, g);
  const std::size_t k = simd::weighted_direction_argmax(grad->x, grad->y, table.x, table.y, g);
  return {table.x[k], table.y[k]};
}

Vec2 direction_field_mrap(const MrapResult& result, const Scenario& s, Vec2 y) {
  return unit_gradient(s.grid, result.V, y, Stencil::upwind);
}

Trajectory trace_grrp(const GrrpResult& result, const Scenario& s, Vec2 target, double step) {
  if (!s.is_grrp()) throw validation_error("problem.type", "needs a grrp problem");
  if (!s.grid.contains(target)) throw validation_error("target", "outside the grid");
  if (step <= 0.0) step = 0.25 * s.grid.spacing;
  if (step > 0.5 * s.grid.spacing) throw validation_error("step", "must not exceed half the grid spacing");
  const NodeIndex tn = s.grid.nearest_node(target);
  const double ut = sample_bilinear(s.grid, result.U, target);
  if (!result.reachable[tn] || !std::isfinite(ut))
    throw Error(ErrorCode::infeasible, "target is outside the reachable region", "target");

  const GlideField field = s.glide_field();
  const Vec2 start = s.grrp().start;
  const double z0 = s.grrp().z0;
  const double stop = std::max(result.meta.seed_radius, 2.0 * s.grid.spacing);
  const Integration path = integrate(s.grid, s.elevation.values, target, start, step, stop, 0.0,
                                     [&](Vec2 p) { return direction_field_grrp(result, s, field, p); },
                                     [&](Vec2 p) {
                                       const double u = sample_bilinear(s.grid, result.U, p);
                                       return z0 - u >= sample_bilinear(s.grid, s.elevation.values, p) - 1e-6 ? u : kInfinity;
                                     });

  Trajectory t;
  t.kind = TrajectoryKind::grrp_optimal;
  t.termination = path.termination;
  std::vector<TrajectoryVertex> traced;
  for (auto it = path.points.rbegin(); it != path.points.rend(); ++it)
    traced.push_back({*it, z0 - sample_bilinear(s.grid, result.U, *it)});
  if (t.termination == Termination::reached_origin) {
    t.vertices.push_back({start, z0});
    append_connector(t.vertices, t.vertices.front(), traced.front(), step);
    t.vertices.pop_back();
  }
  t.vertices.insert(t.vertices.end(), traced.begin(), traced.end());
  t.arc_length = arc_length(t.vertices);
  return t;
}

Trajectory trace_mrap(const MrapResult& result, const Scenario& s, Vec2 from, double step) {
  if (s.is_grrp()) throw validation_error("problem.type", "needs an mrap problem");
  if (!s.grid.contains(from)) throw validation_error("from", "outside the grid");
  if (step <= 0.0) step = 0.25 * s.grid.spacing;
  if (step > 0.5 * s.grid.spacing) throw validation_error("step", "must not exceed half the grid spacing");
  if (!std::isfinite(sample_bilinear(s.grid, result.V, from)))
    throw Error(ErrorCode::infeasible, "no return altitude at this position", "from");

  const Vec2 airfield = s.grid.position(result.airfield_node);
  const double stop = std::max(result.meta.seed_radius, 2.0 * s.grid.spacing);
  const Integration path =
      integrate(s.grid, s.elevation.values, from, airfield, step, stop, step / s.glide_field().g_max(), [&](Vec2 p) { return direction_field_mrap(result, s, p); },
                [&](Vec2 p) {
                  const double v = sample_bilinear(s.grid, result.V, p);
                  return v >= sample_bilinear(s.grid, s.elevation.values, p) - 1e-6 ? v : kInfinity;
                });

  Trajectory t;
  t.kind = TrajectoryKind::mrap_feasible;
  t.termination = path.termination;
  for (const Vec2& p : path.points) t.vertices.push_back({p, sample_bilinear(s.grid, result.V, p)});
  if (t.termination == Termination::reached_origin)
    append_connector(t.vertices, t.vertices.back(), {airfield, s.elevation.values[result.airfield_node]}, step);
  t.arc_length = arc_length(t.vertices);
  return t;
}

}  // namespace glide
