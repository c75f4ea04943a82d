#include "glide/mrap.hpp"

#include <chrono>
#include <cmath>

#include "glide/errors.hpp"

namespace glide {

MrapResult solve_mrap(const Scenario& scenario) {
  const auto t0 = std::chrono::steady_clock::now();
  if (scenario.is_grrp()) throw validation_error("problem.type", "solve_mrap needs an mrap problem");
  scenario.validate();
  if (!scenario.wind.is_zero())
    throw Error(ErrorCode::unsupported_configuration, "minimal return altitude is only solved without wind", "wind");
  const GlideField field = scenario.glide_field();
  const auto ratio = field.constant_ratio();
  if (!ratio) throw Error(ErrorCode::unsupported_configuration, "minimal return altitude needs a constant glide ratio", "aircraft");

  const GridSpec& grid = scenario.grid;
  const auto& E = scenario.elevation.values;
  const std::size_t n = grid.node_count();
  const double g = *ratio;
  const double hg = grid.spacing / g;
  const Vec2 airfield = scenario.mrap().airfield;

  MrapResult r;
  r.V.assign(n, kInfinity);
  r.status.assign(n, NodeStatus::far);
  r.airfield_node = grid.nearest_node(airfield);
  r.meta.variant = "mrap-fmm";
  r.meta.snap_distance = distance(grid.position(r.airfield_node), airfield);
  const double Ea = E[r.airfield_node];
  if (!std::isfinite(Ea)) throw validation_error("problem.airfield", "airfield elevation is impassable");

  std::vector<std::uint8_t> frozen(n, 0);
  FrontQueue queue(n);
  const double radius = scenario.options.seed_radius.value_or(0.0);
  r.meta.seed_radius = radius;
  const Vec2 xa = grid.position(r.airfield_node);
  if (radius > 0.0) {
    const int reach = static_cast<int>(std::ceil(radius / grid.spacing));
    const int ia = grid.col(r.airfield_node);
    const int ja = grid.row(r.airfield_node);
    for (int j = std::max(0, ja - reach); j <= std::min(grid.n_rows - 1, ja + reach); ++j) {
      for (int i = std::max(0, ia - reach); i <= std::min(grid.n_cols - 1, ia + reach); ++i) {
        const NodeIndex k = grid.index(i, j);
        const double d = distance(grid.position(k), xa);
        if (d > radius) continue;
        const double v = Ea + d / g;
        if (!(E[k] <= v))
          throw Error(ErrorCode::infeasible, "terrain rises above the seed cone; shrink options.seed_radius",
                      "options.seed_radius");
        r.V[k] = v;
        frozen[k] = 1;
        r.status[k] = NodeStatus::considered;
        queue.push(k, v);
      }
    }
  } else {
    r.V[r.airfield_node] = Ea;
    frozen[r.airfield_node] = 1;
    r.status[r.airfield_node] = NodeStatus::considered;
    queue.push(r.airfield_node, Ea);
  }

  const Adjacency adj = build_adjacency(grid, false);
  auto value = [&](NodeIndex k) { return k == Adjacency::absent ? kInfinity : r.V[k]; };
  r.acceptance_order.reserve(n);
  while (!queue.empty()) {
    const auto [i, vi] = queue.pop_min();
    r.status[i] = NodeStatus::known;
    r.acceptance_order.push_back(i);
    for (NodeIndex j : adj.of(i)) {
      if (j == Adjacency::absent || r.status[j] == NodeStatus::known || frozen[j] || !std::isfinite(E[j])) continue;
      const auto nb = adj.of(j);
      const double t = eikonal_update_hg(value(nb[Adjacency::up]), value(nb[Adjacency::right]),
                                         value(nb[Adjacency::down]), value(nb[Adjacency::left]), hg);
      const double v = std::min(std::max(t, E[j]), r.V[j]);
      if (v < r.V[j] || r.status[j] == NodeStatus::far) {
        r.V[j] = v;
        r.status[j] = NodeStatus::considered;
        queue.push(j, v);
      }
    }
  }
  r.meta.accepted_count = r.acceptance_order.size();
  r.meta.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

double mrap_oracle_flat(Vec2 airfield, double g, Vec2 y, double airfield_elevation) {
  return airfield_elevation + distance(y, airfield) / g;
}

double mrap_oracle_staircase(Vec2 y) {
  if (!(y.x >= 0.0 && y.x <= 100.0 && std::abs(y.y) <= 50.0))
    throw validation_error("y", "outside the staircase preset domain");
  if (y.x <= 33.0) return norm(y);
  if (y.x <= 66.0) return 100.0 + (y.x - 33.0);
  return 200.0 + (y.x - 66.0);
}

}  // namespace glide
