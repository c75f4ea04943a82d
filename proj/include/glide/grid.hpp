#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "glide/geometry.hpp"

namespace glide {

/// Uniform square grid. Node (i, j) sits at origin + (i, j) * spacing, with
/// i counting columns eastward and j counting rows northward. Node storage is
/// row-major: index = j * n_cols + i.
struct GridSpec {
  int n_cols = 0;
  int n_rows = 0;
  double spacing = 1.0;
  Vec2 origin{};

  std::size_t node_count() const { return static_cast<std::size_t>(n_cols) * n_rows; }
  NodeIndex index(int i, int j) const { return static_cast<NodeIndex>(j * n_cols + i); }
  int col(NodeIndex n) const { return static_cast<int>(n % n_cols); }
  int row(NodeIndex n) const { return static_cast<int>(n / n_cols); }
  Vec2 position(int i, int j) const { return {origin.x + i * spacing, origin.y + j * spacing}; }
  Vec2 position(NodeIndex n) const { return position(col(n), row(n)); }
  Vec2 upper_corner() const { return position(n_cols - 1, n_rows - 1); }

  /// True when p lies in the closed bounding box of the node lattice.
  bool contains(Vec2 p) const;
  NodeIndex nearest_node(Vec2 p) const;

  /// Throws a validation error naming the offending field.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Minimum allowed altitude per node. +inf marks impassable nodes.
struct ElevationField {
  std::vector<double> values;

  bool has_impassable() const;
  double max_finite() const;
};

/// Bilinear interpolation of a node field at p. Corners holding +inf are
/// dropped and the remaining weights renormalized; returns +inf when every
/// corner is +inf. p is clamped into the grid box.
double sample_bilinear(const GridSpec& grid, std::span<const double> field, Vec2 p);

}  // namespace glide
