#pragma once

#include "glide/result.hpp"
#include "glide/scenario.hpp"

namespace glide {

enum class GrrpVariant { automatic, fmm, oum };

/// Picks the fast-marching variant when the glide field is a constant ratio
/// and the ordered-upwind variant otherwise.
GrrpResult solve_grrp(const Scenario& scenario, GrrpVariant variant = GrrpVariant::automatic);

/// Isotropic fast marching; requires zero wind and a constant glide ratio.
/// `seed` overrides the seed derived from the scenario options.
GrrpResult solve_grrp_fmm(const Scenario& scenario, const PartialSolution* seed = nullptr);

/// Ordered upwind method on the triangulated grid for direction-dependent
/// glide ratios. Falls back to the four-neighbor simplex stencil when the
/// field is isotropic.
GrrpResult solve_grrp_oum(const Scenario& scenario, const PartialSolution* seed = nullptr);

/// max(2h, anisotropy * h).
double default_seed_radius(const GridSpec& grid, double anisotropy);

/// Exact straight-glide losses |y - x0| / g(dir) for nodes within `radius`
/// of the start, with the wind frozen at the start. Throws if the radius is
/// below the spacing or terrain intrudes on the seeded disk.
PartialSolution seed_analytic(const Scenario& scenario, double radius);

/// Altitude loss including an initial turn of radius `turn_radius` flown at
/// glide ratio `turn_glide_ratio` from the current `heading`, followed by a
/// straight glide. Nodes strictly inside both turn circles are left out.
PartialSolution seed_turn_loss(const Scenario& scenario, Vec2 heading, double turn_radius, double turn_glide_ratio,
                               double radius);

/// Turn-then-straight loss for one point. Returns +inf inside both circles.
double turn_loss(Vec2 start, Vec2 heading, double turn_radius, double turn_glide_ratio, double straight_glide_ratio,
                 Vec2 y);

/// Closed-form loss on flat terrain in uniform wind: |y - start| / g(dir),
/// with g taken from `field` at (start, z0).
double grrp_oracle_uniform(Vec2 start, const GlideField& field, double z0, Vec2 y);

}  // namespace glide
