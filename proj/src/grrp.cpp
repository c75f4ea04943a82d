#include "glide/grrp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "glide/errors.hpp"

namespace glide {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kGolden = 0.6180339887498949;
constexpr double kZetaTol = 1e-6;
constexpr double kMinLength = 1e-12;

void require_grrp(const Scenario& s) {
  if (!s.is_grrp()) throw validation_error("problem.type", "needs a grrp problem");
}

/// Checks the straight glide from `from` (altitude z_from) to `to`
/// (altitude z_to) against nearest-node terrain sampled every h/4.
bool segment_clear(const GridSpec& grid, const std::vector<double>& E, Vec2 from, double z_from, Vec2 to,
                   double z_to) {
  const double len = distance(from, to);
  const int steps = std::max(1, static_cast<int>(std::ceil(len / (0.25 * grid.spacing))));
  for (int s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) / steps;
    const Vec2 p = from + t * (to - from);
    const double z = z_from + t * (z_to - z_from);
    if (!(E[grid.nearest_node(p)] <= z + 1e-9)) return false;
  }
  return true;
}

/// Minimizes a convex-in-practice function on [0, 1] by golden section,
/// short-circuiting when an endpoint is the minimizer.
template <class F>
double minimize_unit(F&& f, double& zeta) {
  const double f0 = f(0.0);
  const double f1 = f(1.0);
  double best = f0;
  zeta = 0.0;
  if (f1 < best) {
    best = f1;
    zeta = 1.0;
  }
  const double probe = 1e-7;
  const bool rises_from_0 = f(probe) >= f0;
  const bool rises_from_1 = f(1.0 - probe) >= f1;
  if (rises_from_0 && rises_from_1) return best;
  double a = 0.0, b = 1.0;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > kZetaTol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  if (fc < best) {
    best = fc;
    zeta = c;
  }
  if (fd < best) {
    best = fd;
    zeta = d;
  }
  return best;
}

struct Setup {
  PartialSolution seed;
  NodeIndex start_node = 0;
  double snap = 0.0;
};

/// Resolves the seed from the options: explicit radius, start node only
/// (radius 0), or the automatic radius shrunk until the disk is clear.
Setup resolve_seed(const Scenario& s, const GlideField& field, const PartialSolution* given) {
  Setup out;
  const Vec2 start = s.grrp().start;
  out.start_node = s.grid.nearest_node(start);
  out.snap = distance(s.grid.position(out.start_node), start);
  if (given) {
    out.seed = *given;
    return out;
  }
  auto start_only = [&] {
    PartialSolution p;
    p.nodes = {out.start_node};
    p.values = {0.0};
    return p;
  };
  if (s.options.seed_radius) {
    const double r = *s.options.seed_radius;
    out.seed = r > 0.0 ? seed_analytic(s, r) : start_only();
    return out;
  }
  for (double r = default_seed_radius(s.grid, field.anisotropy()); r >= s.grid.spacing; r -= s.grid.spacing) {
    try {
      out.seed = seed_analytic(s, r);
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::infeasible) throw;
    }
  }
  out.seed = start_only();
  return out;
}

struct Run {
  const Scenario& s;
  const GridSpec& grid;
  const std::vector<double>& E;
  double z0;
  GrrpResult r;
  std::vector<std::uint8_t> frozen;
  FrontQueue queue;
  Clock::time_point t0;

  explicit Run(const Scenario& sc)
      : s(sc), grid(sc.grid), E(sc.elevation.values), z0(sc.grrp().z0), queue(sc.grid.node_count()), t0(Clock::now()) {
    const std::size_t n = grid.node_count();
    r.U.assign(n, kInfinity);
    r.status.assign(n, NodeStatus::far);
    frozen.assign(n, 0);
    r.acceptance_order.reserve(n);
  }

  void seed(const Setup& setup) {
    r.start_node = setup.start_node;
    r.meta.snap_distance = setup.snap;
    r.meta.seed_radius = setup.seed.radius;
    for (std::size_t k = 0; k < setup.seed.size(); ++k) {
      const NodeIndex node = setup.seed.nodes[k];
      const double v = setup.seed.values[k];
      if (!(z0 - v >= E[node])) continue;
      r.U[node] = v;
      frozen[node] = 1;
      r.status[node] = NodeStatus::considered;
      queue.push(node, v);
    }
  }

  GrrpResult finish() {
    const std::size_t n = grid.node_count();
    r.reachable.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (r.status[k] != NodeStatus::known) r.U[k] = kInfinity;
      r.reachable[k] = std::isfinite(r.U[k]) && z0 - r.U[k] >= E[k];
    }
    r.meta.accepted_count = r.acceptance_order.size();
    r.meta.runtime_s = std::chrono::duration<double>(Clock::now() - t0).count();
    return std::move(r);
  }
};

/// Ordered upwind propagation on the triangulated grid.
class Oum {
 public:
  Oum(Run& run, const GlideField& field)
      : run_(run), grid_(run.grid), E_(run.E), U_(run.r.U), status_(run.r.status), field_(field), z0_(run.z0) {
    radius_ = field.anisotropy() * grid_.spacing * std::sqrt(2.0);
    reach_ = static_cast<int>(std::ceil(radius_ / grid_.spacing)) + 1;
    g_max_ = field.g_max();
    adj_ = build_adjacency(grid_, true);
    local_max_ = window_max(reach_ + 1);
  }

  void propagate() {
    while (!run_.queue.empty()) {
      const auto [x, ux] = run_.queue.pop_min();
      status_[x] = NodeStatus::known;
      run_.r.acceptance_order.push_back(x);
      refresh_considered(x, ux);
      for (NodeIndex j : adj_.of(x)) {
        if (j == Adjacency::absent || status_[j] != NodeStatus::far || !std::isfinite(E_[j])) continue;
        status_[j] = NodeStatus::considered;
        const double v = std::max(full_update(j), ux);
        if (std::isfinite(v) && z0_ - v >= E_[j]) {
          U_[j] = v;
          run_.queue.push(j, v);
        } else {
          status_[j] = NodeStatus::far;
        }
      }
    }
  }

 private:
  std::vector<double> window_max(int w) const {
    const int nc = grid_.n_cols, nr = grid_.n_rows;
    std::vector<double> rows(E_.size()), out(E_.size());
    for (int j = 0; j < nr; ++j)
      for (int i = 0; i < nc; ++i) {
        double m = -kInfinity;
        for (int a = std::max(0, i - w); a <= std::min(nc - 1, i + w); ++a) m = std::max(m, E_[grid_.index(a, j)]);
        rows[grid_.index(i, j)] = m;
      }
    for (int j = 0; j < nr; ++j)
      for (int i = 0; i < nc; ++i) {
        double m = -kInfinity;
        for (int b = std::max(0, j - w); b <= std::min(nr - 1, j + w); ++b) m = std::max(m, rows[grid_.index(i, b)]);
        out[grid_.index(i, j)] = m;
      }
    return out;
  }

  bool has_considered_neighbor(NodeIndex k) const {
    for (NodeIndex l : adj_.of(k))
      if (l != Adjacency::absent && status_[l] == NodeStatus::considered) return true;
    return false;
  }

  double cost_from(Vec2 xi, Vec2 from, double u_from) const {
    const Vec2 d = xi - from;
    const double len = norm(d);
    if (len < kMinLength) return kInfinity;
    const double g = field_.evaluate_or_zero(xi, z0_ - u_from, {d.x / len, d.y / len});
    return g > 0.0 ? u_from + len / g : kInfinity;
  }

  bool clear(NodeIndex i, Vec2 from, double u_from, double u_to) const {
    if (local_max_[i] <= z0_ - u_to) return true;
    return segment_clear(grid_, E_, from, z0_ - u_from, grid_.position(i), z0_ - u_to);
  }

  void try_vertex(NodeIndex i, Vec2 xi, NodeIndex v, double& best) const {
    const Vec2 xv = grid_.position(v);
    if (distance(xi, xv) > radius_) return;
    if (U_[v] + distance(xi, xv) / g_max_ >= best) return;
    const double c = cost_from(xi, xv, U_[v]);
    if (c < best && clear(i, xv, U_[v], c)) best = c;
  }

  void try_edge(NodeIndex i, Vec2 xi, NodeIndex j, NodeIndex k, double& best) const {
    const Vec2 xj = grid_.position(j);
    const Vec2 xk = grid_.position(k);
    const double dseg = distance_to_segment(xi, xj, xk);
    if (dseg > radius_) return;
    const double uj = U_[j], uk = U_[k];
    if (std::min(uj, uk) + dseg / g_max_ >= best) return;
    auto f = [&](double z) { return cost_from(xi, z * xj + (1.0 - z) * xk, z * uj + (1.0 - z) * uk); };
    double zeta = 0.0;
    const double c = minimize_unit(f, zeta);
    if (c < best && clear(i, zeta * xj + (1.0 - zeta) * xk, zeta * uj + (1.0 - zeta) * uk, c)) best = c;
  }

  /// Candidate value for a node entering the considered set, over every
  /// accepted-front edge and vertex within the stencil radius.
  double full_update(NodeIndex i) const {
    const Vec2 xi = grid_.position(i);
    const int ci = grid_.col(i), cj = grid_.row(i);
    double best = kInfinity;
    for (int b = std::max(0, cj - reach_); b <= std::min(grid_.n_rows - 1, cj + reach_); ++b) {
      for (int a = std::max(0, ci - reach_); a <= std::min(grid_.n_cols - 1, ci + reach_); ++a) {
        const NodeIndex k = grid_.index(a, b);
        if (status_[k] != NodeStatus::known || !has_considered_neighbor(k)) continue;
        try_vertex(i, xi, k, best);
        for (NodeIndex l : adj_.of(k)) {
          if (l == Adjacency::absent || status_[l] != NodeStatus::known) continue;
          if (l < k && has_considered_neighbor(l)) continue;
          try_edge(i, xi, k, l, best);
        }
      }
    }
    return best;
  }

  /// Lowers considered nodes near the newly accepted x using the edges
  /// that x just completed.
  void refresh_considered(NodeIndex x, double ux) {
    const int ci = grid_.col(x), cj = grid_.row(x);
    for (int b = std::max(0, cj - reach_); b <= std::min(grid_.n_rows - 1, cj + reach_); ++b) {
      for (int a = std::max(0, ci - reach_); a <= std::min(grid_.n_cols - 1, ci + reach_); ++a) {
        const NodeIndex y = grid_.index(a, b);
        if (status_[y] != NodeStatus::considered || run_.frozen[y]) continue;
        const Vec2 xy = grid_.position(y);
        double best = U_[y];
        try_vertex(y, xy, x, best);
        for (NodeIndex k : adj_.of(x))
          if (k != Adjacency::absent && status_[k] == NodeStatus::known) try_edge(y, xy, x, k, best);
        best = std::max(best, ux);
        if (best < U_[y] && z0_ - best >= E_[y]) {
          U_[y] = best;
          run_.queue.push(y, best);
        }
      }
    }
  }

  Run& run_;
  const GridSpec& grid_;
  const std::vector<double>& E_;
  std::vector<double>& U_;
  std::vector<NodeStatus>& status_;
  const GlideField& field_;
  double z0_;
  double radius_ = 0.0;
  int reach_ = 1;
  double g_max_ = 1.0;
  Adjacency adj_;
  std::vector<double> local_max_;
};

/// Four-neighbor simplex update with the same one-dimensional minimization
/// as the anisotropic stencil; used when the glide field is isotropic.
double quadrant_update(const GridSpec& grid, const GlideField& field, double z0, const std::vector<double>& U,
                       std::span<const NodeIndex> nb, Vec2 xi) {
  auto value = [&](NodeIndex k) { return k == Adjacency::absent ? kInfinity : U[k]; };
  auto cost = [&](Vec2 from, double u) {
    const Vec2 d = xi - from;
    const double len = norm(d);
    if (len < kMinLength || !std::isfinite(u)) return kInfinity;
    const double g = field.evaluate_or_zero(xi, z0 - u, {d.x / len, d.y / len});
    return g > 0.0 ? u + len / g : kInfinity;
  };
  double best = kInfinity;
  for (int a : {Adjacency::left, Adjacency::right}) {
    for (int b : {Adjacency::up, Adjacency::down}) {
      const double ua = value(nb[a]), ub = value(nb[b]);
      if (!std::isfinite(ua) || !std::isfinite(ub)) continue;
      const Vec2 xa = grid.position(nb[a]), xb = grid.position(nb[b]);
      double zeta = 0.0;
      best = std::min(best, minimize_unit([&](double z) { return cost(z * xa + (1.0 - z) * xb, z * ua + (1.0 - z) * ub); },
                                          zeta));
    }
  }
  for (int a = 0; a < 4; ++a)
    if (nb[a] != Adjacency::absent) best = std::min(best, cost(grid.position(nb[a]), U[nb[a]]));
  return best;
}

}  // namespace

double default_seed_radius(const GridSpec& grid, double anisotropy) {
  return std::max(2.0 * grid.spacing, anisotropy * grid.spacing);
}

GrrpResult solve_grrp_fmm(const Scenario& scenario, const PartialSolution* seed) {
  require_grrp(scenario);
  scenario.validate();
  if (!scenario.wind.is_zero())
    throw Error(ErrorCode::unsupported_configuration, "fast marching needs zero wind; use the ordered upwind variant", "wind");
  const GlideField field = scenario.glide_field();
  const auto g = field.constant_ratio();
  if (!g) throw Error(ErrorCode::unsupported_configuration, "fast marching needs a constant glide ratio", "aircraft");

  Run run(scenario);
  run.seed(resolve_seed(scenario, field, seed));
  run.r.meta.variant = "fmm";
  const double hg = scenario.grid.spacing / *g;
  const Adjacency adj = build_adjacency(scenario.grid, false);
  auto& U = run.r.U;
  auto& status = run.r.status;
  auto value = [&](NodeIndex k) { return k == Adjacency::absent ? kInfinity : U[k]; };
  while (!run.queue.empty()) {
    const auto [i, ui] = run.queue.pop_min();
    status[i] = NodeStatus::known;
    run.r.acceptance_order.push_back(i);
    for (NodeIndex j : adj.of(i)) {
      if (j == Adjacency::absent || status[j] == NodeStatus::known || run.frozen[j]) continue;
      const auto nb = adj.of(j);
      const double t = eikonal_update_hg(value(nb[Adjacency::up]), value(nb[Adjacency::right]),
                                         value(nb[Adjacency::down]), value(nb[Adjacency::left]), hg);
      if (run.z0 - t >= run.E[j] && t < U[j]) {
        U[j] = t;
        status[j] = NodeStatus::considered;
        run.queue.push(j, t);
      }
    }
  }
  return run.finish();
}

GrrpResult solve_grrp_oum(const Scenario& scenario, const PartialSolution* seed) {
  require_grrp(scenario);
  scenario.validate();
  const GlideField field = scenario.glide_field();
  Run run(scenario);
  run.seed(resolve_seed(scenario, field, seed));
  run.r.meta.variant = "oum";
  run.r.meta.anisotropy = field.anisotropy();

  if (field.isotropic()) {
    const Adjacency adj = build_adjacency(scenario.grid, false);
    auto& U = run.r.U;
    auto& status = run.r.status;
    while (!run.queue.empty()) {
      const auto [i, ui] = run.queue.pop_min();
      status[i] = NodeStatus::known;
      run.r.acceptance_order.push_back(i);
      for (NodeIndex j : adj.of(i)) {
        if (j == Adjacency::absent || status[j] == NodeStatus::known || run.frozen[j]) continue;
        const double t = quadrant_update(scenario.grid, field, run.z0, U, adj.of(j), scenario.grid.position(j));
        if (run.z0 - t >= run.E[j] && t < U[j]) {
          U[j] = t;
          status[j] = NodeStatus::considered;
          run.queue.push(j, t);
        }
      }
    }
    return run.finish();
  }

  Oum(run, field).propagate();
  return run.finish();
}

GrrpResult solve_grrp(const Scenario& scenario, GrrpVariant variant) {
  if (variant == GrrpVariant::automatic) {
    require_grrp(scenario);
    const bool windless = scenario.wind.is_zero() && scenario.glide_field().constant_ratio().has_value();
    variant = windless ? GrrpVariant::fmm : GrrpVariant::oum;
  }
  return variant == GrrpVariant::fmm ? solve_grrp_fmm(scenario) : solve_grrp_oum(scenario);
}

PartialSolution seed_analytic(const Scenario& scenario, double radius) {
  require_grrp(scenario);
  const GridSpec& grid = scenario.grid;
  if (!(radius >= grid.spacing)) throw validation_error("options.seed_radius", "must be at least the grid spacing");
  const GlideField field = scenario.glide_field();
  const auto& E = scenario.elevation.values;
  const Vec2 x0 = scenario.grrp().start;
  const double z0 = scenario.grrp().z0;
  PartialSolution out;
  out.radius = radius;
  const int reach = static_cast<int>(std::ceil(radius / grid.spacing)) + 1;
  const NodeIndex c = grid.nearest_node(x0);
  for (int j = std::max(0, grid.row(c) - reach); j <= std::min(grid.n_rows - 1, grid.row(c) + reach); ++j) {
    for (int i = std::max(0, grid.col(c) - reach); i <= std::min(grid.n_cols - 1, grid.col(c) + reach); ++i) {
      const NodeIndex k = grid.index(i, j);
      const Vec2 y = grid.position(k);
      if (distance(y, x0) > radius) continue;
      const double u = grrp_oracle_uniform(x0, field, z0, y);
      if (!(z0 - u >= E[k]) || !segment_clear(grid, E, x0, z0, y, z0 - u))
        throw Error(ErrorCode::infeasible, "terrain intrudes on the seed disk; shrink options.seed_radius",
                    "options.seed_radius");
      out.nodes.push_back(k);
      out.values.push_back(u);
    }
  }
  return out;
}

double turn_loss(Vec2 start, Vec2 heading, double R, double g_turn, double g_straight, Vec2 y) {
  const Vec2 h = normalized(heading);
  const Vec2 left{-h.y, h.x};
  double best = kInfinity;
  for (int side : {+1, -1}) {
    const Vec2 c = start + (side * R) * left;
    const Vec2 cy = y - c;
    const double d = norm(cy);
    if (d < R) continue;
    const double theta0 = std::atan2(start.y - c.y, start.x - c.x);
    const double alpha = std::atan2(cy.y, cy.x);
    const double beta = std::acos(std::min(1.0, R / d));
    double phi = side > 0 ? (alpha - beta) - theta0 : theta0 - (alpha + beta);
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;
    if (phi > 2.0 * kPi - 1e-12) phi = 0.0;
    const double straight = std::sqrt(std::max(0.0, d * d - R * R));
    best = std::min(best, R * phi / g_turn + straight / g_straight);
  }
  return best;
}

PartialSolution seed_turn_loss(const Scenario& scenario, Vec2 heading, double R, double g_turn, double radius) {
  require_grrp(scenario);
  if (!(R > 0.0)) throw validation_error("turn_radius", "must be positive");
  if (!(g_turn > 0.0)) throw validation_error("turn_glide_ratio", "must be positive");
  if (!(norm(heading) > 0.0)) throw validation_error("heading", "must be non-zero");
  const GridSpec& grid = scenario.grid;
  if (!(radius >= grid.spacing)) throw validation_error("radius", "must be at least the grid spacing");
  const GlideField field = scenario.glide_field();
  const auto g = field.constant_ratio();
  if (!g) throw Error(ErrorCode::unsupported_configuration, "turn-loss seeding needs a constant glide ratio", "aircraft");
  const auto& E = scenario.elevation.values;
  const Vec2 x0 = scenario.grrp().start;
  const double z0 = scenario.grrp().z0;
  PartialSolution out;
  out.radius = radius;
  const int reach = static_cast<int>(std::ceil(radius / grid.spacing)) + 1;
  const NodeIndex c = grid.nearest_node(x0);
  for (int j = std::max(0, grid.row(c) - reach); j <= std::min(grid.n_rows - 1, grid.row(c) + reach); ++j) {
    for (int i = std::max(0, grid.col(c) - reach); i <= std::min(grid.n_cols - 1, grid.col(c) + reach); ++i) {
      const NodeIndex k = grid.index(i, j);
      const Vec2 y = grid.position(k);
      if (distance(y, x0) > radius) continue;
      const double u = distance(y, x0) < kMinLength ? 0.0 : turn_loss(x0, heading, R, g_turn, *g, y);
      if (!std::isfinite(u)) continue;
      // Glide-cone intrusion: the disk must be clear below the straight cone.
      if (!(z0 - u >= E[k]) || !(z0 - distance(y, x0) / *g >= E[k]))
        throw Error(ErrorCode::infeasible, "terrain intrudes on the turn seed disk; shrink the radius", "radius");
      out.nodes.push_back(k);
      out.values.push_back(u);
    }
  }
  return out;
}

double grrp_oracle_uniform(Vec2 start, const GlideField& field, double z0, Vec2 y) {
  const Vec2 d = y - start;
  const double len = norm(d);
  if (len == 0.0) return 0.0;
  const double g = field.evaluate_or_zero(start, z0, {d.x / len, d.y / len});
  return g > 0.0 ? len / g : kInfinity;
}

}  // namespace glide
