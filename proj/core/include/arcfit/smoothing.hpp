#pragma once

#include <cstdint>
#include <vector>

#include "arcfit/geometry.hpp"

namespace arcfit {

struct JunctionReport {
  int index = 0;  // junction k sits between pieces k-1 and k of the curve
  double cos_angle = 1.0;
  bool bad = false;
  enum class Fix : std::uint8_t { none, biarc, fillet, unfixable };
  Fix fix = Fix::none;
};

/// Bad junction iff the tangents turn more than the threshold allows:
/// cos(angle) < eps_good.
JunctionReport classify_junction(Vec2 t_prev_end, Vec2 t_next_start, double eps_good);

/// Replaces the corner at junction k with a G1 biarc between the two points
/// at chord distance delta from the junction on the neighboring pieces.
/// Throws NeighborTooShort / DeltaTooLarge (corner deviation exceeds epsilon)
/// / DeltaTooSmall (the biarc hugs the corner and changes nothing).
PccCurve smooth_with_biarc(const PccCurve& curve, int k, double delta, double epsilon);

/// Replaces the corner at junction k with a single arc of radius rho tangent
/// to both neighbors; the center comes from intersecting the two neighbor
/// offsets at distance rho on the wedge side. Throws NoFilletExists.
PccCurve smooth_with_fillet(const PccCurve& curve, int k, double rho);

struct SmoothConfig {
  enum class Mode : std::uint8_t { none, biarc, fillet };
  Mode mode = Mode::none;
  double eps_good = 0.995;
  double epsilon = 0.5;       // fit tolerance; bounds the corner deviation
  double delta = 0.0;         // biarc trim distance; 0 picks 2x spacing_hint
  double rho = 0.0;           // fillet radius; 0 searches the largest within epsilon
  double spacing_hint = 1.0;  // median data spacing
};

struct SmoothOutcome {
  PccCurve curve;
  std::vector<JunctionReport> junctions;
};

/// Walks the junctions left to right, fixing every bad one with the
/// configured method. Junctions that cannot be fixed stay in the report as
/// unfixable; nothing is left silently bad.
SmoothOutcome smooth_curve(const PccCurve& curve, const SmoothConfig& config);

}  // namespace arcfit
