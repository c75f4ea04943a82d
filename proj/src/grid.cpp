#include "glide/grid.hpp"

#include <algorithm>
#include <cmath>

#include "glide/errors.hpp"

namespace glide {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::unsupported_configuration: return "unsupported_configuration";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::wind_exceeds_airspeed: return "wind_exceeds_airspeed";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

bool GridSpec::contains(Vec2 p) const {
  const Vec2 hi = upper_corner();
  const double tol = 1e-9 * spacing;
  return p.x >= origin.x - tol && p.y >= origin.y - tol && p.x <= hi.x + tol && p.y <= hi.y + tol;
}

NodeIndex GridSpec::nearest_node(Vec2 p) const {
  const int i = std::clamp(static_cast<int>(std::lround((p.x - origin.x) / spacing)), 0, n_cols - 1);
  const int j = std::clamp(static_cast<int>(std::lround((p.y - origin.y) / spacing)), 0, n_rows - 1);
  return index(i, j);
}

void GridSpec::validate() const {
  if (n_cols < 2) throw validation_error("grid.n_cols", "must be at least 2");
  if (n_rows < 2) throw validation_error("grid.n_rows", "must be at least 2");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw validation_error("grid.spacing", "must be positive");
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) throw validation_error("grid.origin", "must be finite");
}

bool ElevationField::has_impassable() const {
  return std::any_of(values.begin(), values.end(), [](double v) { return std::isinf(v); });
}

double ElevationField::max_finite() const {
  double best = -kInfinity;
  for (double v : values)
    if (std::isfinite(v)) best = std::max(best, v);
  return best;
}

double sample_bilinear(const GridSpec& grid, std::span<const double> field, Vec2 p) {
  const double fx = std::clamp((p.x - grid.origin.x) / grid.spacing, 0.0, grid.n_cols - 1.0);
  const double fy = std::clamp((p.y - grid.origin.y) / grid.spacing, 0.0, grid.n_rows - 1.0);
  const int i0 = std::min(static_cast<int>(fx), grid.n_cols - 2);
  const int j0 = std::min(static_cast<int>(fy), grid.n_rows - 2);
  const double tx = fx - i0;
  const double ty = fy - j0;
  const double w[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
  const double v[4] = {field[grid.index(i0, j0)], field[grid.index(i0 + 1, j0)], field[grid.index(i0, j0 + 1)],
                       field[grid.index(i0 + 1, j0 + 1)]};
  double acc = 0.0;
  double wsum = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (!std::isfinite(v[k])) continue;
    acc += w[k] * v[k];
    wsum += w[k];
  }
  if (wsum > 0.0) return acc / wsum;
  // Point sits exactly on finite corners with zero weight; fall back to the
  // nearest finite corner.
  double best = kInfinity;
  double best_d = kInfinity;
  for (int k = 0; k < 4; ++k) {
    if (!std::isfinite(v[k])) continue;
    const double d = std::hypot(tx - (k & 1), ty - (k >> 1));
    if (d < best_d) {
      best_d = d;
      best = v[k];
    }
  }
  return best;
}

}  // namespace glide
