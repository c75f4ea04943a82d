#pragma once

// Front-propagation building blocks shared by the GRRP and MRAP solvers.

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "glide/geometry.hpp"
#include "glide/grid.hpp"

namespace glide {

enum class NodeStatus : std::uint8_t { far, considered, known };

/// Isotropic first-order upwind update from the four axis neighbors
/// (absent neighbors passed as +inf), with h/g precomputed.
inline double eikonal_update_hg(double up, double right, double down, double left, double h_over_g) {
  const double ux = std::min(right, left);
  const double uy = std::min(up, down);
  const double d = ux - uy;
  if (std::abs(d) <= h_over_g) return 0.5 * (ux + uy + std::sqrt(2.0 * h_over_g * h_over_g - d * d));
  return std::min(ux, uy) + h_over_g;
}

inline double eikonal_update(double up, double right, double down, double left, double h, double g) {
  return eikonal_update_hg(up, right, down, left, h / g);
}

/// Min-priority queue over node indices with decrease-key. Ties pop the
/// lowest node index first. Implemented with lazy deletion: stale heap
/// entries are skipped on pop.
class FrontQueue {
 public:
  explicit FrontQueue(std::size_t node_count) : key_(node_count, kInfinity), queued_(node_count, 0) {}

  /// Inserts the node or lowers its key. Raising a key is ignored.
  void push(NodeIndex node, double value);
  /// Removes and returns the entry with the smallest key. Throws
  /// std::out_of_range when empty.
  std::pair<NodeIndex, double> pop_min();

  bool empty() const { return live_ == 0; }
  std::size_t size() const { return live_; }
  bool contains(NodeIndex node) const { return queued_[node] != 0; }

 private:
  struct Entry {
    double value;
    NodeIndex node;
    bool operator>(const Entry& o) const { return value > o.value || (value == o.value && node > o.node); }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::vector<double> key_;
  std::vector<std::uint8_t> queued_;
  std::size_t live_ = 0;
};

/// Fixed-degree neighbor table. Slots are ordered up, right, down, left and,
/// for the triangulated variant, up-right then down-left (the lower-left to
/// upper-right diagonal of each grid square). Missing neighbors hold `absent`.
struct Adjacency {
  static constexpr NodeIndex absent = std::numeric_limits<NodeIndex>::max();
  enum Slot { up = 0, right = 1, down = 2, left = 3, up_right = 4, down_left = 5 };

  int degree = 4;
  std::vector<NodeIndex> table;

  std::span<const NodeIndex> of(NodeIndex node) const {
    return {table.data() + static_cast<std::size_t>(node) * degree, static_cast<std::size_t>(degree)};
  }
  /// Number of present neighbors of `node`.
  int count(NodeIndex node) const;
};

Adjacency build_adjacency(const GridSpec& grid, bool triangulated);

}  // namespace glide
