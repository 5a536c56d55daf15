#pragma once

#include <span>
#include <vector>

#include "arcfit/constrained_fit.hpp"
#include "arcfit/geometry.hpp"

namespace arcfit {

/// Feasibility and selection tables of the longest-arc method. Entries are
/// counts (inclusive of both window endpoints); the last two entries are
/// always zero. Indices are 0-based in memory, 1-based when serialized.
struct FitTables {
  std::vector<int> m;
  std::vector<int> g;
  double epsilon = 0.5;
};

/// m[i] = size of the longest point window starting at i whose constrained
/// least-squares piece keeps every interior radial residual within epsilon,
/// grown incrementally (growth stops at the first infeasible window).
/// Requires >= 4 pairwise-distinct points.
std::vector<int> build_m(std::span<const Point2> pts, double epsilon,
                         const MinimizeOptions* fit_opts = nullptr);

/// Marks which window starts survive the longest-arc selection scan: a start
/// is kept when no index in its half-window lookahead has a longer window,
/// otherwise the scan jumps to the better index.
std::vector<int> select_g(std::span<const int> m);

enum class GapPolicy { recurse, biarc };

struct SplineBuild {
  PccCurve curve;
  std::vector<bool> covered;      // residual within epsilon
  std::vector<double> residuals;  // distance of each input point to the curve
};

/// Emits the selected arcs and fills the gaps between them: one uncovered
/// point bridges with a segment, two with the three-point circle, longer runs
/// either re-run the method on the sub-range or fit an optimal-ratio biarc
/// using the flanking tangents. Always returns a C0 chain.
SplineBuild build_spline(std::span<const Point2> pts, const FitTables& tables,
                         GapPolicy policy = GapPolicy::recurse,
                         const MinimizeOptions* fit_opts = nullptr);

}  // namespace arcfit
