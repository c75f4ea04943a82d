#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glide/result.hpp"
#include "glide/scenario.hpp"

namespace glide {

struct ErrorReport {
  /// (approx - oracle) / oracle per node; NaN where excluded.
  std::vector<double> rel_err;
  /// approx - oracle per node; NaN where excluded.
  std::vector<double> abs_err;
  double max_rel = 0.0;
  double mean_rel = 0.0;
  double max_abs = 0.0;
  /// approx >= oracle - 1e-9 on every included node, and no node is
  /// reported reachable where the oracle says it is not.
  bool conservative = true;
  std::size_t included = 0;
  std::size_t excluded = 0;
  /// Nodes finite in the approximation but infinite in the oracle.
  std::size_t false_reachable = 0;
};

/// Compares a solved field to an oracle field. Nodes are excluded when
/// `skip[k]` is set, when either value is infinite, when the oracle is NaN,
/// or when the oracle is at most 10 * machine epsilon * scale.
ErrorReport compare_fields(std::span<const double> approx, std::span<const double> oracle,
                           std::span<const std::uint8_t> skip, double scale);

/// Shortest paths on the K-neighbor lattice graph (K in 4, 8, 16, 32, 64).
/// Edge cost is length / g at the segment midpoint and the departure
/// altitude; edges whose endpoints or interior samples dip below the
/// minimum altitude are rejected. GRRP scenarios give altitude loss from
/// the start node, MRAP scenarios give return altitude with the terrain
/// clamp.
std::vector<double> dijkstra_oracle(const Scenario& scenario, int neighborhood);

/// Primitive lattice steps of the K-neighbor stencil, shortest first.
std::vector<std::pair<int, int>> lattice_steps(int neighborhood);

/// Vertical line x = line_x that can be crossed only at `openings`
/// (closed ordinate intervals, no altitude needed) or, when `height` is
/// finite, anywhere at altitude >= height.
struct BarrierLine {
  double line_x = 50.0;
  std::vector<std::pair<double, double>> openings;
  double height = kInfinity;
  /// Ordinate range a crossing may use.
  double y_min = -kInfinity;
  double y_max = kInfinity;
};

/// Altitude loss past a barrier line on otherwise flat terrain in uniform
/// wind: straight glides joined at the best admissible crossing point.
double grrp_oracle_barrier(Vec2 start, const GlideField& field, double z0, const BarrierLine& barrier, Vec2 y);

/// Windless return altitude past a barrier line on flat terrain at
/// elevation 0, airfield elevation 0.
double mrap_oracle_barrier(Vec2 airfield, double g, const BarrierLine& barrier, Vec2 y);

enum class OracleKind { none, closed_form, dijkstra };

struct BenchmarkSpec {
  std::string name;
  std::string preset;
  OracleKind oracle = OracleKind::none;
  double max_rel_bound = 0.0;
  bool expect_conservative = true;
  /// Coarser benchmark whose max_rel must exceed this one's by `refine_factor`.
  std::string refines;
  double refine_factor = 3.0;
  std::vector<std::string> suites;
  std::function<std::vector<double>(const Scenario&)> oracle_field;
};

const std::vector<BenchmarkSpec>& benchmark_registry();
std::vector<std::string> benchmark_suites();

struct BenchmarkOutcome {
  std::string name;
  Scenario scenario;
  std::vector<double> field;
  std::vector<std::uint8_t> reachable;
  std::vector<NodeIndex> acceptance_order;
  SolveMeta meta;
  std::optional<ErrorReport> report;
  double bound = 0.0;
  bool passed = true;
  std::vector<std::string> failures;
};

/// Solves a registered benchmark, compares it with its oracle and checks
/// the registered bounds and the structural invariants.
BenchmarkOutcome run_benchmark(const std::string& name);
std::vector<BenchmarkOutcome> run_suite(const std::string& suite);

/// Oracle fields for the registered scenarios, exposed for tests.
std::vector<double> oracle_grrp_uniform(const Scenario& scenario);
std::vector<double> oracle_grrp_barrier(const Scenario& scenario);
std::vector<double> oracle_mrap_flat(const Scenario& scenario);
std::vector<double> oracle_mrap_barrier(const Scenario& scenario);
std::vector<double> oracle_mrap_staircase(const Scenario& scenario);

/// Barrier geometry of the barrier presets, as used by the oracles.
BarrierLine preset_barrier(const Scenario& scenario);

}  // namespace glide
