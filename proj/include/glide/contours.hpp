#pragma once

#include <span>
#include <vector>

#include "glide/geometry.hpp"
#include "glide/grid.hpp"

namespace glide {

/// Polylines of one level. A closed polyline repeats its first vertex at the end.
struct ContourLevel {
  double level = 0.0;
  std::vector<std::vector<Vec2>> polylines;
};

/// Marching squares with linear edge interpolation. Cells with a +inf
/// corner are skipped, so contours running into them stay open. Saddles
/// are split by comparing the cell average with the level.
std::vector<ContourLevel> extract_contours(const GridSpec& grid, std::span<const double> field,
                                           std::span<const double> levels);

/// `count` levels evenly spaced strictly inside the finite range of `field`.
std::vector<double> default_contour_levels(std::span<const double> field, int count = 10);

}  // namespace glide
