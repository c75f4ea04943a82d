#pragma once

#include <string_view>
#include <vector>

#include "glide/result.hpp"
#include "glide/scenario.hpp"

namespace glide {

enum class TrajectoryKind { grrp_optimal, mrap_feasible };
enum class Termination { reached_origin, max_steps, stalled };

std::string_view to_string(TrajectoryKind k);
std::string_view to_string(Termination t);

struct TrajectoryVertex {
  Vec2 position;
  double altitude = 0.0;
};

/// Polyline ordered from the start (GRRP) or the aircraft (MRAP) to the
/// target (GRRP) or the airfield (MRAP).
struct Trajectory {
  std::vector<TrajectoryVertex> vertices;
  TrajectoryKind kind = TrajectoryKind::grrp_optimal;
  Termination termination = Termination::stalled;
  double arc_length = 0.0;
};

/// Optimal heading at y. Zero wind: normalized gradient of U. Otherwise the
/// sampled direction maximizing grad(U) . a * g(y, z0 - U(y), a). Throws
/// ErrorCode::infeasible where the gradient is undefined.
Vec2 direction_field_grrp(const GrrpResult& result, const Scenario& scenario, const GlideField& field, Vec2 y);

/// Normalized gradient of V.
Vec2 direction_field_mrap(const MrapResult& result, const Scenario& scenario, Vec2 y);

/// Backward midpoint integration from `target` to the start. `step` <= 0
/// selects 0.25 * spacing. Throws ErrorCode::infeasible for unreachable targets.
Trajectory trace_grrp(const GrrpResult& result, const Scenario& scenario, Vec2 target, double step = 0.0);

/// Integrates -grad(V)/|grad(V)| from `from` to the airfield.
Trajectory trace_mrap(const MrapResult& result, const Scenario& scenario, Vec2 from, double step = 0.0);

}  // namespace glide
