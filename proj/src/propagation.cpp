#include "glide/propagation.hpp"

#include <stdexcept>

namespace glide {

void FrontQueue::push(NodeIndex node, double value) {
  if (queued_[node] && !(value < key_[node])) return;
  if (!queued_[node]) {
    queued_[node] = 1;
    ++live_;
  }
  key_[node] = value;
  heap_.push({value, node});
}

std::pair<NodeIndex, double> FrontQueue::pop_min() {
  while (!heap_.empty()) {
    const Entry top = heap_.top();
    heap_.pop();
    if (!queued_[top.node] || top.value != key_[top.node]) continue;
    queued_[top.node] = 0;
    key_[top.node] = kInfinity;
    --live_;
    return {top.node, top.value};
  }
  throw std::out_of_range("pop_min on an empty front queue");
}

int Adjacency::count(NodeIndex node) const {
  int c = 0;
  for (NodeIndex n : of(node)) c += n != absent;
  return c;
}

Adjacency build_adjacency(const GridSpec& grid, bool triangulated) {
  Adjacency adj;
  adj.degree = triangulated ? 6 : 4;
  adj.table.assign(grid.node_count() * adj.degree, Adjacency::absent);
  const int nc = grid.n_cols;
  const int nr = grid.n_rows;
  for (int j = 0; j < nr; ++j) {
    for (int i = 0; i < nc; ++i) {
      NodeIndex* slot = adj.table.data() + static_cast<std::size_t>(grid.index(i, j)) * adj.degree;
      if (j + 1 < nr) slot[Adjacency::up] = grid.index(i, j + 1);
      if (i + 1 < nc) slot[Adjacency::right] = grid.index(i + 1, j);
      if (j > 0) slot[Adjacency::down] = grid.index(i, j - 1);
      if (i > 0) slot[Adjacency::left] = grid.index(i - 1, j);
      if (triangulated) {
        if (i + 1 < nc && j + 1 < nr) slot[Adjacency::up_right] = grid.index(i + 1, j + 1);
        if (i > 0 && j > 0) slot[Adjacency::down_left] = grid.index(i - 1, j - 1);
      }
    }
  }
  return adj;
}

}  // namespace glide
