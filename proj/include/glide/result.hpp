#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glide/geometry.hpp"
#include "glide/propagation.hpp"

namespace glide {

struct SolveMeta {
  std::string variant;  ///< "fmm", "oum" or "mrap-fmm"
  double seed_radius = 0.0;
  double anisotropy = 1.0;
  double runtime_s = 0.0;
  std::size_t accepted_count = 0;
  /// Distance between the requested start/airfield and the node it was snapped to.
  double snap_distance = 0.0;
};

/// Node values fixed before propagation starts (analytic or turn-loss seed).
struct PartialSolution {
  std::vector<NodeIndex> nodes;
  std::vector<double> values;
  double radius = 0.0;

  std::size_t size() const { return nodes.size(); }
};

struct MrapResult {
  std::vector<double> V;
  std::vector<NodeStatus> status;
  NodeIndex airfield_node = 0;
  /// Nodes in the order they were accepted.
  std::vector<NodeIndex> acceptance_order;
  SolveMeta meta;
};

struct GrrpResult {
  std::vector<double> U;
  std::vector<std::uint8_t> reachable;
  std::vector<NodeStatus> status;
  NodeIndex start_node = 0;
  std::vector<NodeIndex> acceptance_order;
  SolveMeta meta;
};

}  // namespace glide
