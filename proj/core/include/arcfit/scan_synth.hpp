#pragma once

#include <cstdint>
#include <vector>

#include "arcfit/geometry.hpp"

namespace arcfit {

/// Ground-truth contour: an ordered chain of line segments and arcs.
/// Vertices are the tangent-discontinuous junctions; on closed shapes this
/// includes the seam between the last and first piece.
struct ShapeSpec {
  std::vector<ArcSeg> pieces;
  bool closed = false;

  double length() const;
  std::vector<Point2> vertices() const;
  /// Cumulative arclength position of every vertex.
  std::vector<double> vertex_arclengths() const;
  /// Point at arclength s in [0, length].
  Point2 point_at_arclength(double s) const;
  Vec2 tangent_at_arclength(double s) const;
};

struct ScanConfig {
  double step = 1.0;              // sampling arclength step, mm
  double corner_exclusion = 1.0;  // no sample within this arclength of a vertex
  double jitter_sigma = 0.0;      // noise standard deviation, mm
  std::uint64_t seed = 0;
  /// Default noise acts along the contour normal (range-error model of a
  /// laser line scanner); set for isotropic noise instead.
  bool isotropic_jitter = false;
};

struct ScanTruth {
  std::vector<Point2> vertices;
  std::vector<ArcSeg> pieces;
};

struct ScanResult {
  std::vector<Point2> points;
  ScanTruth truth;
};

/// Samples the contour at arclength multiples of step, skips the exclusion
/// zone around every vertex and applies seeded jitter. Noise comes from a
/// splitmix64 counter sequence through the Box-Muller transform, so output is
/// bit-identical across platforms for a given (shape, config).
/// Throws StepTooLarge when a piece yields fewer than 3 samples.
ScanResult generate_scan(const ShapeSpec& shape, const ScanConfig& config);

/// Closed regular polygon with the given side length, first vertex on the
/// +y axis of the center.
ShapeSpec regular_polygon(int sides, double side_length, Point2 center = {0.0, 0.0});

}  // namespace arcfit
