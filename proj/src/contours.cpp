#include "glide/contours.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "glide/errors.hpp"

namespace glide {

namespace {

struct Segment {
  std::uint64_t a;
  std::uint64_t b;
};

// Edge keys: 2*node for the edge toward +x, 2*node+1 for the edge toward +y.
std::uint64_t horizontal(const GridSpec& g, int i, int j) { return 2ull * g.index(i, j); }
std::uint64_t vertical(const GridSpec& g, int i, int j) { return 2ull * g.index(i, j) + 1; }

Vec2 crossing(const GridSpec& g, std::span<const double> f, std::uint64_t key, double level) {
  const NodeIndex n = static_cast<NodeIndex>(key / 2);
  const int i = g.col(n), j = g.row(n);
  const NodeIndex m = key % 2 == 0 ? g.index(i + 1, j) : g.index(i, j + 1);
  const double fa = f[n], fb = f[m];
  const double t = fa == fb ? 0.5 : std::clamp((level - fa) / (fb - fa), 0.0, 1.0);
  const Vec2 pa = g.position(n), pb = g.position(m);
  return pa + t * (pb - pa);
}

std::vector<Segment> cell_segments(const GridSpec& g, std::span<const double> f, double level) {
  std::vector<Segment> out;
  for (int j = 0; j + 1 < g.n_rows; ++j) {
    for (int i = 0; i + 1 < g.n_cols; ++i) {
      const double v00 = f[g.index(i, j)], v10 = f[g.index(i + 1, j)];
      const double v11 = f[g.index(i + 1, j + 1)], v01 = f[g.index(i, j + 1)];
      if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v11) || !std::isfinite(v01)) continue;
      const int c = (v00 >= level ? 1 : 0) | (v10 >= level ? 2 : 0) | (v11 >= level ? 4 : 0) | (v01 >= level ? 8 : 0);
      if (c == 0 || c == 15) continue;
      const std::uint64_t bottom = horizontal(g, i, j), top = horizontal(g, i, j + 1);
      const std::uint64_t left = vertical(g, i, j), right = vertical(g, i + 1, j);
      switch (c) {
        case 1: case 14: out.push_back({left, bottom}); break;
        case 2: case 13: out.push_back({bottom, right}); break;
        case 3: case 12: out.push_back({left, right}); break;
        case 4: case 11: out.push_back({right, top}); break;
        case 6: case 9: out.push_back({bottom, top}); break;
        case 7: case 8: out.push_back({left, top}); break;
        case 5:
        case 10: {
          // Corners 00 and 11 share a side; the average decides whether
          // they are joined through the cell.
          const bool center_high = 0.25 * (v00 + v10 + v11 + v01) >= level;
          if ((c == 5) == center_high) {
            out.push_back({left, top});
            out.push_back({bottom, right});
          } else {
            out.push_back({left, bottom});
            out.push_back({right, top});
          }
          break;
        }
        default: break;
      }
    }
  }
  return out;
}

std::vector<std::vector<Vec2>> chain(const GridSpec& g, std::span<const double> f, double level,
                                     const std::vector<Segment>& segs) {
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> at;
  at.reserve(segs.size() * 2);
  for (std::size_t s = 0; s < segs.size(); ++s) {
    at[segs[s].a].push_back(s);
    at[segs[s].b].push_back(s);
  }
  std::vector<char> used(segs.size(), 0);
  std::vector<std::vector<Vec2>> lines;

  auto walk = [&](std::size_t first, std::uint64_t from) {
    std::vector<std::uint64_t> keys{from};
    std::size_t s = first;
    std::uint64_t here = from;
    for (;;) {
      used[s] = 1;
      here = segs[s].a == here ? segs[s].b : segs[s].a;
      keys.push_back(here);
      std::size_t next = segs.size();
      for (std::size_t cand : at[here])
        if (!used[cand]) {
          next = cand;
          break;
        }
      if (next == segs.size()) break;
      s = next;
    }
    std::vector<Vec2> pts;
    pts.reserve(keys.size());
    for (std::uint64_t k : keys) pts.push_back(crossing(g, f, k, level));
    lines.push_back(std::move(pts));
  };

  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (used[s]) continue;
    if (at[segs[s].a].size() == 1) walk(s, segs[s].a);
    else if (at[segs[s].b].size() == 1) walk(s, segs[s].b);
  }
  for (std::size_t s = 0; s < segs.size(); ++s)
    if (!used[s]) walk(s, segs[s].a);
  return lines;
}

}  // namespace

std::vector<ContourLevel> extract_contours(const GridSpec& grid, std::span<const double> field,
                                           std::span<const double> levels) {
  if (field.size() != grid.node_count()) throw validation_error("field", "size does not match the grid");
  std::vector<ContourLevel> out;
  out.reserve(levels.size());
  for (double level : levels) {
    if (!std::isfinite(level)) throw validation_error("levels", "must be finite");
    out.push_back({level, chain(grid, field, level, cell_segments(grid, field, level))});
  }
  return out;
}

std::vector<double> default_contour_levels(std::span<const double> field, int count) {
  double lo = kInfinity, hi = -kInfinity;
  for (double v : field)
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  std::vector<double> levels;
  if (!(hi > lo) || count <= 0) return levels;
  for (int k = 1; k <= count; ++k) levels.push_back(lo + (hi - lo) * k / (count + 1));
  return levels;
}

}  // namespace glide
