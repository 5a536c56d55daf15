#pragma once

#include <span>
#include <vector>

#include "arcfit/corner.hpp"
#include "arcfit/smoothing.hpp"
#include "arcfit/spline_c0.hpp"
#include "arcfit/spline_longest.hpp"

namespace arcfit {

enum class FitMethod { longest, c0 };

struct PipelineConfig {
  double tolerance = 0.5;                   // fit tolerance of the output curve, mm
  std::vector<double> report_tolerances{};  // empty runs only the main tolerance
  FitMethod method = FitMethod::c0;
  GapPolicy gap_policy = GapPolicy::recurse;
  SmoothConfig::Mode smoothing = SmoothConfig::Mode::none;
  double eps_good = 0.995;
  double smooth_delta = 0.0;  // 0 = auto
  double smooth_rho = 0.0;    // 0 = auto
  CornerParams corner{};
  bool closed = false;
  bool find_corners = true;
  bool improve_gaps = false;
  double gap_factor = 3.0;
};

/// One row of the result table: piece counts of the curve fitted at this
/// tolerance, and how many input points ended up farther than the tolerance
/// from it.
struct ResultRow {
  double tolerance = 0.0;
  int arcs = 0;
  int segments = 0;
  int bad_points = 0;
};

struct PipelineResult {
  PccCurve curve;
  CornerReport corners;
  std::vector<ResultRow> rows;
  std::vector<JunctionReport> junctions;
  std::vector<double> residuals;  // per input point, against the output curve
};

/// Full pipeline: optional gap improvement, corner recovery, per-section
/// fitting with the recovered corners as hard interpolation endpoints,
/// junction smoothing, and the per-tolerance result rows.
PipelineResult run_pipeline(std::span<const Point2> pts, const PipelineConfig& config);

}  // namespace arcfit
