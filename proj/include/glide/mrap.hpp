#pragma once

#include "glide/result.hpp"
#include "glide/scenario.hpp"

namespace glide {

/// Windless minimal-return-altitude solve by fast marching with the terrain
/// clamp V = max(update, E). With options.seed_radius > 0 the nodes inside
/// that disk around the airfield start from the exact cone E_a + d/g.
MrapResult solve_mrap(const Scenario& scenario);

/// E_a + |y - airfield| / g.
double mrap_oracle_flat(Vec2 airfield, double g, Vec2 y, double airfield_elevation = 0.0);

/// Piecewise return altitude of the staircase preset, y relative to the
/// airfield at the origin. Throws outside the preset domain.
double mrap_oracle_staircase(Vec2 y);

}  // namespace glide
