#include "glide/verification.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <queue>

#include "glide/errors.hpp"
#include "glide/grrp.hpp"
#include "glide/mrap.hpp"
#include "glide/simd/kernels.hpp"

namespace glide {

ErrorReport compare_fields(std::span<const double> approx, std::span<const double> oracle,
                           std::span<const std::uint8_t> skip, double scale) {
  const std::size_t n = approx.size();
  if (oracle.size() != n || (!skip.empty() && skip.size() != n))
    throw validation_error("oracle", "field sizes differ");
  const double eps = 10.0 * DBL_EPSILON * scale;
  ErrorReport rep;
  std::vector<std::uint8_t> include(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (!skip.empty() && skip[k]) continue;
    const double a = approx[k], o = oracle[k];
    if (std::isnan(o)) continue;
    if (std::isfinite(a) && std::isinf(o)) ++rep.false_reachable;
    include[k] = std::isfinite(a) && std::isfinite(o) && o > eps;
  }
  rep.rel_err.resize(n);
  rep.abs_err.resize(n);
  const simd::ErrorSums s = simd::relative_error(approx, oracle, include, rep.rel_err, rep.abs_err);
  rep.included = s.included;
  rep.excluded = n - s.included;
  rep.max_rel = s.max_rel;
  rep.mean_rel = s.included ? s.sum_rel / static_cast<double>(s.included) : 0.0;
  rep.max_abs = s.max_abs;
  rep.conservative = s.min_signed >= -1e-9 && rep.false_reachable == 0;
  return rep;
}

std::vector<std::pair<int, int>> lattice_steps(int K) {
  if (K != 4 && K != 8 && K != 16 && K != 32 && K != 64)
    throw validation_error("neighborhood", "must be 4, 8, 16, 32 or 64");
  std::vector<std::pair<int, int>> all;
  for (int a = -6; a <= 6; ++a)
    for (int b = -6; b <= 6; ++b)
      if ((a || b) && std::gcd(std::abs(a), std::abs(b)) == 1) all.emplace_back(a, b);
  std::stable_sort(all.begin(), all.end(), [](auto p, auto q) {
    const int lp = p.first * p.first + p.second * p.second, lq = q.first * q.first + q.second * q.second;
    if (lp != lq) return lp < lq;
    return std::atan2(p.second, p.first) < std::atan2(q.second, q.first);
  });
  all.resize(K);
  return all;
}

std::vector<double> dijkstra_oracle(const Scenario& s, int K) {
  s.validate();
  const auto steps = lattice_steps(K);
  const GridSpec& grid = s.grid;
  const auto& E = s.elevation.values;
  const GlideField field = s.glide_field();
  const bool grrp = s.is_grrp();
  const double z0 = grrp ? s.grrp().z0 : 0.0;
  const std::size_t n = grid.node_count();
  std::vector<double> value(n, kInfinity);
  std::vector<std::uint8_t> done(n, 0);
  using Item = std::pair<double, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const NodeIndex src = grid.nearest_node(grrp ? s.grrp().start : s.mrap().airfield);
  value[src] = grrp ? 0.0 : E[src];
  heap.push({value[src], src});

  auto terrain = [&](Vec2 p) { return E[grid.nearest_node(p)]; };
  while (!heap.empty()) {
    const auto [vu, u] = heap.top();
    heap.pop();
    if (done[u] || vu != value[u]) continue;
    done[u] = 1;
    const int iu = grid.col(u), ju = grid.row(u);
    const Vec2 xu = grid.position(u);
    for (const auto& [di, dj] : steps) {
      const int iv = iu + di, jv = ju + dj;
      if (iv < 0 || jv < 0 || iv >= grid.n_cols || jv >= grid.n_rows) continue;
      const NodeIndex v = grid.index(iv, jv);
      if (done[v] || !std::isfinite(E[v])) continue;
      const Vec2 xv = grid.position(v);
      const double len = distance(xu, xv);
      const int samples = std::max(2, static_cast<int>(std::ceil(len / (0.25 * grid.spacing))));
      double candidate;
      if (grrp) {
        const Vec2 dir = (1.0 / len) * (xv - xu);
        const double g = field.evaluate_or_zero(0.5 * (xu + xv), z0 - vu, dir);
        if (!(g > 0.0)) continue;
        candidate = vu + len / g;
        bool ok = z0 - candidate >= E[v];
        for (int k = 1; k < samples && ok; ++k) {
          const double t = static_cast<double>(k) / samples;
          ok = terrain(xu + t * (xv - xu)) <= z0 - (vu + t * (candidate - vu)) + 1e-9;
        }
        if (!ok) continue;
      } else {
        // Flight runs from v toward u.
        const Vec2 dir = (1.0 / len) * (xu - xv);
        const double g = field.evaluate_or_zero(0.5 * (xu + xv), vu, dir);
        if (!(g > 0.0)) continue;
        candidate = std::max(E[v], vu + len / g);
        for (int k = 1; k < samples; ++k) {
          const double t = static_cast<double>(k) / samples;
          candidate = std::max(candidate, terrain(xv + t * (xu - xv)) + t * len / g);
        }
      }
      if (candidate < value[v]) {
        value[v] = candidate;
        heap.push({candidate, v});
      }
    }
  }
  return value;
}

namespace {

template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b) {
  constexpr double r = 0.6180339887498949;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-10 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  double best_x = fc < fd ? c : d;
  double best = std::min(fc, fd);
  for (double x : {a, b}) {
    const double fx = f(x);
    if (fx < best) {
      best = fx;
      best_x = x;
    }
  }
  return {best_x, best};
}

/// Sub-interval of [lo, hi] where the convex function f stays <= level.
std::optional<std::pair<double, double>> sublevel(const std::function<double(double)>& f, double lo, double hi,
                                                  double level) {
  const auto [xm, fm] = golden_min(f, lo, hi);
  if (!(fm <= level)) return std::nullopt;
  auto root = [&](double inside, double outside) {
    if (f(outside) <= level) return outside;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (inside + outside);
      (f(mid) <= level ? inside : outside) = mid;
    }
    return inside;
  };
  return std::make_pair(root(xm, lo), root(xm, hi));
}

double side_of(const BarrierLine& b, Vec2 p, double tol) {
  if (std::abs(p.x - b.line_x) <= tol) return 0.0;
  return p.x < b.line_x ? -1.0 : 1.0;
}

double crossing_height(const BarrierLine& b, double y) {
  for (const auto& [lo, hi] : b.openings)
    if (y >= lo && y <= hi) return 0.0;
  return b.height;
}

}  // namespace

double grrp_oracle_barrier(Vec2 start, const GlideField& field, double z0, const BarrierLine& b, Vec2 y) {
  auto c = [&](Vec2 from, Vec2 to) {
    const Vec2 d = to - from;
    const double len = norm(d);
    if (len == 0.0) return 0.0;
    const double g = field.evaluate_or_zero(from, z0, {d.x / len, d.y / len});
    return g > 0.0 ? len / g : kInfinity;
  };
  const double tol = 1e-9;
  const double sy = side_of(b, y, tol);
  const double s0 = side_of(b, start, tol);
  if (sy == 0.0) {
    const double u = c(start, y);
    return z0 - u >= crossing_height(b, y.y) ? u : kInfinity;
  }
  if (sy == s0) return c(start, y);
  auto through = [&](double py) {
    const Vec2 p{b.line_x, py};
    return c(start, p) + c(p, y);
  };
  double best = kInfinity;
  for (const auto& [lo, hi] : b.openings) best = std::min(best, golden_min(through, lo, hi).second);
  if (std::isfinite(b.height)) {
    const std::function<double(double)> reach = [&](double py) { return c(start, Vec2{b.line_x, py}); };
    const double lo = std::isfinite(b.y_min) ? b.y_min : start.y - 1e4;
    const double hi = std::isfinite(b.y_max) ? b.y_max : start.y + 1e4;
    if (const auto iv = sublevel(reach, lo, hi, z0 - b.height))
      best = std::min(best, golden_min(through, iv->first, iv->second).second);
  }
  return best;
}

double mrap_oracle_barrier(Vec2 airfield, double g, const BarrierLine& b, Vec2 y) {
  const double tol = 1e-9;
  const double sy = side_of(b, y, tol);
  const double sa = side_of(b, airfield, tol);
  if (sy == 0.0) return std::max(crossing_height(b, y.y), distance(y, airfield) / g);
  if (sy == sa) return distance(y, airfield) / g;
  auto through = [&](double py, double h) {
    const Vec2 p{b.line_x, py};
    return std::max(h, distance(p, airfield) / g) + distance(y, p) / g;
  };
  double best = kInfinity;
  for (const auto& [lo, hi] : b.openings)
    best = std::min(best, golden_min([&](double py) { return through(py, 0.0); }, lo, hi).second);
  if (std::isfinite(b.height)) {
    const double lo = std::isfinite(b.y_min) ? b.y_min : airfield.y - 1e4;
    const double hi = std::isfinite(b.y_max) ? b.y_max : airfield.y + 1e4;
    best = std::min(best, golden_min([&](double py) { return through(py, b.height); }, lo, hi).second);
  }
  return best;
}

BarrierLine preset_barrier(const Scenario& s) {
  BarrierLine b;
  b.line_x = terrain::barrier_x;
  b.y_min = s.grid.origin.y;
  b.y_max = s.grid.upper_corner().y;
  const GridSpec& grid = s.grid;
  const int col = static_cast<int>(std::lround((b.line_x - grid.origin.x) / grid.spacing));
  double height = 0.0;
  bool impassable = false;
  for (int j = 0; j < grid.n_rows; ++j) {
    const double e = s.elevation.values[grid.index(col, j)];
    if (std::isinf(e)) impassable = true;
    else height = std::max(height, e);
  }
  if (impassable) {
    b.height = kInfinity;
    for (const auto& [lo, hi] : terrain::barrier_openings) b.openings.emplace_back(lo, hi);
  } else {
    b.height = height;
  }
  return b;
}

std::vector<double> oracle_grrp_uniform(const Scenario& s) {
  const GlideField field = s.glide_field();
  std::vector<double> out(s.grid.node_count());
  for (NodeIndex k = 0; k < out.size(); ++k) {
    const double u = grrp_oracle_uniform(s.grrp().start, field, s.grrp().z0, s.grid.position(k));
    out[k] = s.grrp().z0 - u >= s.elevation.values[k] ? u : kInfinity;
  }
  return out;
}

std::vector<double> oracle_grrp_barrier(const Scenario& s) {
  const GlideField field = s.glide_field();
  const BarrierLine b = preset_barrier(s);
  std::vector<double> out(s.grid.node_count());
  for (NodeIndex k = 0; k < out.size(); ++k) {
    const double e = s.elevation.values[k];
    if (std::isinf(e)) {
      out[k] = kInfinity;
      continue;
    }
    const double u = grrp_oracle_barrier(s.grrp().start, field, s.grrp().z0, b, s.grid.position(k));
    out[k] = s.grrp().z0 - u >= e ? u : kInfinity;
  }
  return out;
}

std::vector<double> oracle_mrap_flat(const Scenario& s) {
  const auto g = s.glide_field().constant_ratio().value_or(1.0);
  const NodeIndex a = s.grid.nearest_node(s.mrap().airfield);
  std::vector<double> out(s.grid.node_count());
  for (NodeIndex k = 0; k < out.size(); ++k)
    out[k] = mrap_oracle_flat(s.grid.position(a), g, s.grid.position(k), s.elevation.values[a]);
  return out;
}

std::vector<double> oracle_mrap_barrier(const Scenario& s) {
  const auto g = s.glide_field().constant_ratio().value_or(1.0);
  const BarrierLine b = preset_barrier(s);
  std::vector<double> out(s.grid.node_count());
  for (NodeIndex k = 0; k < out.size(); ++k)
    out[k] = std::isinf(s.elevation.values[k]) ? kInfinity
                                                : mrap_oracle_barrier(s.mrap().airfield, g, b, s.grid.position(k));
  return out;
}

std::vector<double> oracle_mrap_staircase(const Scenario& s) {
  const Vec2 a = s.mrap().airfield;
  std::vector<double> out(s.grid.node_count(), std::numeric_limits<double>::quiet_NaN());
  for (NodeIndex k = 0; k < out.size(); ++k) {
    const Vec2 y = s.grid.position(k) - a;
    if (std::abs(y.y) <= 15.0) out[k] = mrap_oracle_staircase(y);
  }
  return out;
}

const std::vector<BenchmarkSpec>& benchmark_registry() {
  static const std::vector<BenchmarkSpec> specs = [] {
    std::vector<BenchmarkSpec> v;
    auto add = [&](std::string name, OracleKind kind, double bound, bool conservative,
                   std::function<std::vector<double>(const Scenario&)> oracle, std::vector<std::string> suites,
                   std::string refines = {}) {
      BenchmarkSpec b;
      b.preset = name;
      b.name = std::move(name);
      b.oracle = kind;
      b.max_rel_bound = bound;
      b.expect_conservative = conservative;
      b.oracle_field = std::move(oracle);
      b.suites = std::move(suites);
      b.refines = std::move(refines);
      v.push_back(std::move(b));
    };
    using K = OracleKind;
    add("flat-uniform-wind", K::closed_form, 0.03, true, oracle_grrp_uniform, {"terrain"});
    add("grrp-flat-uniform-wind", K::closed_form, 0.03, true, oracle_grrp_uniform, {"appendix-g"});
    add("grrp-infinite-barrier", K::closed_form, 0.04, true, oracle_grrp_barrier, {"appendix-g"});
    add("grrp-infinite-barrier-fine", K::closed_form, 0.04, true, oracle_grrp_barrier, {"appendix-g"});
    add("grrp-finite-barrier", K::closed_form, 0.04, true, oracle_grrp_barrier, {"appendix-g"});
    add("mrap-flat", K::closed_form, 0.04, true, oracle_mrap_flat, {"appendix-g"});
    add("mrap-infinite-barrier", K::closed_form, 0.05, true, oracle_mrap_barrier, {"appendix-g"});
    add("mrap-infinite-barrier-fine", K::closed_form, 0.05, true, oracle_mrap_barrier, {"appendix-g"},
        "mrap-infinite-barrier");
    add("mrap-finite-barrier", K::closed_form, 0.05, true, oracle_mrap_barrier, {"appendix-g"});
    add("staircase", K::closed_form, 0.05, false, oracle_mrap_staircase, {"terrain"});
    add("single-peak", K::none, 0.0, true, nullptr, {"terrain"});
    add("mountain-range", K::none, 0.0, true, nullptr, {"terrain"});
    add("mrap-single-peak", K::none, 0.0, true, nullptr, {"terrain"});
    add("mrap-mountain-range", K::none, 0.0, true, nullptr, {"terrain"});
    return v;
  }();
  return specs;
}

std::vector<std::string> benchmark_suites() { return {"appendix-g", "terrain", "all"}; }

namespace {

const BenchmarkSpec& find_spec(const std::string& name) {
  for (const auto& b : benchmark_registry())
    if (b.name == name) return b;
  throw validation_error("benchmark", "unknown benchmark '" + name + "'");
}

}  // namespace

BenchmarkOutcome run_benchmark(const std::string& name) {
  const BenchmarkSpec& spec = find_spec(name);
  BenchmarkOutcome out;
  out.name = spec.name;
  out.scenario = make_preset(spec.preset);
  const Scenario& s = out.scenario;
  Vec2 origin;
  std::vector<double> elevation_floor;
  if (s.is_grrp()) {
    GrrpResult r = solve_grrp(s);
    out.field = std::move(r.U);
    out.reachable = std::move(r.reachable);
    out.acceptance_order = std::move(r.acceptance_order);
    out.meta = r.meta;
    origin = s.grrp().start;
  } else {
    MrapResult r = solve_mrap(s);
    out.field = std::move(r.V);
    out.reachable.resize(out.field.size());
    for (std::size_t k = 0; k < out.field.size(); ++k) out.reachable[k] = std::isfinite(out.field[k]);
    out.acceptance_order = std::move(r.acceptance_order);
    out.meta = r.meta;
    origin = s.mrap().airfield;
  }
  auto fail = [&](std::string why) {
    out.passed = false;
    out.failures.push_back(std::move(why));
  };

  for (std::size_t k = 1; k < out.acceptance_order.size(); ++k)
    if (out.field[out.acceptance_order[k]] < out.field[out.acceptance_order[k - 1]]) {
      fail("acceptance order decreases at step " + std::to_string(k));
      break;
    }
  const auto& E = s.elevation.values;
  for (std::size_t k = 0; k < out.field.size(); ++k) {
    if (!std::isfinite(out.field[k])) continue;
    if (s.is_grrp() && out.reachable[k] && !(s.grrp().z0 - out.field[k] >= E[k])) {
      fail("reachable node " + std::to_string(k) + " below the minimum altitude");
      break;
    }
    if (!s.is_grrp() && !(out.field[k] >= E[k])) {
      fail("return altitude below terrain at node " + std::to_string(k));
      break;
    }
  }

  if (spec.oracle_field) {
    const std::vector<double> oracle = spec.oracle_field(s);
    std::vector<std::uint8_t> skip(out.field.size(), 0);
    for (NodeIndex k = 0; k < skip.size(); ++k)
      skip[k] = distance(s.grid.position(k), origin) <= out.meta.seed_radius + 1e-9 * s.grid.spacing;
    const double scale = s.is_grrp() ? s.grrp().z0 : std::max(1.0, s.elevation.max_finite());
    out.report = compare_fields(out.field, oracle, skip, scale);
    out.bound = spec.max_rel_bound;
    if (!spec.refines.empty()) {
      const BenchmarkOutcome coarse = run_benchmark(spec.refines);
      if (coarse.report) out.bound = std::min(out.bound, coarse.report->max_rel / spec.refine_factor);
    }
    if (!(out.report->max_rel <= out.bound)) fail("max relative error above bound");
    if (spec.expect_conservative && !out.report->conservative) fail("not conservative");
  }
  return out;
}

std::vector<BenchmarkOutcome> run_suite(const std::string& suite) {
  std::vector<BenchmarkOutcome> out;
  bool known = suite == "all";
  for (const auto& name : benchmark_suites()) known = known || name == suite;
  for (const auto& b : benchmark_registry()) {
    if (suite != "all" && std::find(b.suites.begin(), b.suites.end(), suite) == b.suites.end()) {
      if (b.name == suite) {
        out.push_back(run_benchmark(b.name));
        return out;
      }
      continue;
    }
    out.push_back(run_benchmark(b.name));
  }
  if (!known && out.empty()) throw validation_error("suite", "unknown suite or benchmark '" + suite + "'");
  return out;
}

}  // namespace glide
