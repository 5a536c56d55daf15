#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arcfit/geometry.hpp"

namespace arcfit {

struct CornerParams {
  double eps_turn = 0.9;  // turn-cosine screen: candidate iff cos >= -eps_turn
  double r_max = 20.0;    // circumradius bound of the anchor test, mm
  double delta = 1.0;     // Taubin growth tolerance, mm
  int m_limit = 30;       // window-size cap of the growth loop
  /// Pairing comparison exactly as printed in the source algorithm; the
  /// default pairs toward the sharper neighbor instead, which keeps both
  /// growth windows on their own side of the corner.
  bool literal_pairing = false;
};

struct AnchorDiag {
  std::pair<int, int> anchors;  // 0-based indices
  int k = 0;
  int h = 0;
  CircleOrLine left;
  CircleOrLine right;
  bool ok = false;
  std::string note;
};

struct IndexRange {
  int first = 0;  // 0-based inclusive
  int last = 0;
};

struct CornerReport {
  std::vector<std::pair<int, int>> anchors;  // one pair per recovered corner
  std::vector<Point2> corners;
  std::vector<IndexRange> sections;  // partition of the index range
  std::vector<AnchorDiag> diagnostics;
};

/// Cosine of the angle at p[i] between the unit vectors toward both
/// neighbors: -1 on a straight run, +1 on an exact back-track.
double turn_cosine(std::span<const Point2> pts, int i);

/// Anchor screening and pairing: indices passing both the turn-cosine screen
/// and the circumradius test cluster around each corner; every cluster emits
/// one pair of consecutive indices bracketing the corner.
std::vector<std::pair<int, int>> find_anchor_pairs(std::span<const Point2> pts,
                                                   const CornerParams& params);

struct GrownArcs {
  int k = 0;  // accepted backward window size from the first anchor
  int h = 0;  // accepted forward window size from the second anchor
  CircleOrLine left;
  CircleOrLine right;
};

/// Grows Taubin windows away from the anchor pair while the fit stays within
/// delta, capped at m_limit; the floor windows fall back to the exact
/// three-point circle. Throws InsufficientPoints.
GrownArcs grow_taubin_arcs(std::span<const Point2> pts, std::pair<int, int> anchor_pair,
                           const CornerParams& params);

/// Intersection of the two grown fits closest to `near`. Throws NoIntersection.
Point2 locate_corner(const CircleOrLine& left, const CircleOrLine& right, Point2 near);

/// End-to-end corner recovery on an open sequence, with the section
/// decomposition between consecutive corners. Per-anchor failures land in the
/// diagnostics without aborting the rest.
CornerReport detect_corners(std::span<const Point2> pts, const CornerParams& params);

/// Corner recovery on a closed contour: the sequence is extended cyclically
/// so seam-straddling corners are seen, and duplicate detections are folded
/// modulo N. Sections may wrap (first > last).
CornerReport detect_corners_closed(std::span<const Point2> pts, const CornerParams& params);

/// Fills abnormally wide sample gaps (spacing > gap_factor * median) with one
/// point from the intersection of the flanking three-point circles, falling
/// back to the chord midpoint.
std::vector<Point2> improve_dataset(std::span<const Point2> pts, double gap_factor);

}  // namespace arcfit
