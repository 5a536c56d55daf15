#pragma once

#include <span>

#include "arcfit/geometry.hpp"

namespace arcfit {

/// Chord coordinate frame of a constrained arc fit. The arc is forced through
/// p0 and p1; candidate centers live on the chord's perpendicular bisector,
/// parametrized by the signed offset t from the chord midpoint.
struct ChordFrame {
  Point2 p0{};
  Point2 p1{};
  double d = 0.0;  // chord length
  Vec2 u{};        // unit chord direction
  Vec2 u_perp{};   // u rotated +90 degrees

  static ChordFrame between(Point2 a, Point2 b);

  Point2 center_at(double t) const {
    const Point2 mid = midpoint(p0, p1);
    return {mid.x + t * u_perp.x, mid.y + t * u_perp.y};
  }
  double radius_at(double t) const { return std::sqrt(t * t + 0.25 * d * d); }
};

/// Sum of squared radial residuals of the interior points against the circle
/// centered at C(t) through the chord endpoints. Finite for every t; its
/// derivative is discontinuous where C(t) hits a data point, which a
/// derivative-free search never needs.
double objective_f(double t, const ChordFrame& frame, std::span<const Point2> interior);

/// Common limit of the objective at t -> +/-inf: the squared perpendicular
/// deviations of the interior points from the chord line. Zero exactly when
/// the interior is collinear with the chord.
double limit_f(const ChordFrame& frame, std::span<const Point2> interior);

struct MinimizeOptions {
  /// Caller's fit tolerance; drives the segment fallback test.
  double epsilon = 0.5;
  /// Uniform samples over the core bracket [-T, T], T = 10*max(d, spread).
  int core_samples = 1024;
  /// Log-spaced samples per side beyond the core bracket, out to tail_limit.
  /// Near-straight data minimizes at center offsets far outside the core
  /// bracket (the optimal radius scales like 1/noise), so the tail is what
  /// separates huge-radius arcs from true segments.
  int tail_samples = 128;
  double tail_limit = 1e8;
};

struct ConstrainedArcFit {
  double t_star = 0.0;
  Point2 center{};
  double radius = 0.0;
  double max_residual = 0.0;
  bool is_segment = false;
  /// Resulting piece: the fitted arc on the data side of the chord, or the
  /// chord segment for the degenerate case.
  ArcSeg seg{};
};

/// Minimizes the constrained-arc objective over the center offset t and
/// assembles the fitted piece. Grid search plus golden-section refinement;
/// emits a segment when no arc improves on the collinear limit and the chord
/// line explains the data at the configured tolerance.
ConstrainedArcFit minimize_f(const ChordFrame& frame, std::span<const Point2> interior,
                             const MinimizeOptions& opts = {});

/// Taubin algebraic circle fit (unconstrained). Solves the characteristic
/// cubic of the 3x3 constraint pencil by Newton iteration from zero, which
/// picks the smallest nonnegative eigenvalue. Falls back to a total
/// least-squares line when the fitted curvature drops below 1/kDegenerateRadius.
/// Throws DegenerateInput for fewer than 3 distinct points.
CircleOrLine taubin_fit(std::span<const Point2> pts);

}  // namespace arcfit
