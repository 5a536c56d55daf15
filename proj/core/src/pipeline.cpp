#include "arcfit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "arcfit/errors.hpp"

namespace arcfit {

namespace {

double median_spacing(std::span<const Point2> pts) {
  if (pts.size() < 2) return 1.0;
  std::vector<double> d;
  d.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) d.push_back(distance(pts[i], pts[i + 1]));
  std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
  return d[d.size() / 2];
}

/// One section to fit: hard corner endpoints around a run of data points.
/// list_to_work maps each list position to a 0-based index of the working
/// sequence (corners borrow the adjacent data index).
struct Section {
  std::vector<Point2> list;
  std::vector<int> list_to_work;
};

PccCurve fit_section(const Section& section, double tol, FitMethod method,
                     GapPolicy policy) {
  const std::span<const Point2> list(section.list);
  PccCurve out;
  const int k = static_cast<int>(list.size());
  if (k < 2) return out;
  if (k == 2) {
    out.segs.push_back(ArcSeg::make_segment(list[0], list[1]));
    out.segs.back().src_first = 1;
    out.segs.back().src_last = 2;
    return out;
  }
  if (k == 3) {
    const CircleOrLine c = circle_through_three(list[0], list[1], list[2]);
    ArcSeg seg = std::holds_alternative<Circle>(c)
                     ? ArcSeg::arc_through_via(list[0], list[2],
                                               std::get<Circle>(c).center, list[1])
                     : ArcSeg::make_segment(list[0], list[2]);
    seg.src_first = 1;
    seg.src_last = 3;
    out.segs.push_back(seg);
    return out;
  }
  const std::vector<int> m = build_m(list, tol);
  if (method == FitMethod::c0) {
    const std::vector<int> g = select_g_c0(m);
    out = build_spline_c0(list, g, tol).curve;
  } else {
    FitTables tables;
    tables.m = m;
    tables.g = select_g(m);
    tables.epsilon = tol;
    out = build_spline(list, tables, policy).curve;
  }
  return out;
}

struct Frame {
  std::vector<Point2> work;  // working sequence (possibly rotated / extended)
  std::vector<Section> sections;
  CornerReport report;
};

Frame build_frame(std::span<const Point2> pts, const PipelineConfig& config) {
  Frame f;
  f.work.assign(pts.begin(), pts.end());
  if (config.improve_gaps) {
    f.work = improve_dataset(f.work, config.gap_factor);
  }
  const int n = static_cast<int>(f.work.size());

  const bool detect = config.find_corners && n >= 5;
  if (detect) {
    f.report = config.closed ? detect_corners_closed(f.work, config.corner)
                             : detect_corners(f.work, config.corner);
  } else {
    if (n > 0) f.report.sections.push_back({0, n - 1});
  }

  auto push_section = [&](const Point2* lead, int from, int to, const Point2* trail,
                          const std::vector<Point2>& seq, int rot) {
    Section s;
    auto work_index = [&](int i) { return (rot + i) % n; };
    if (lead) {
      s.list.push_back(*lead);
      s.list_to_work.push_back(work_index(from));
    }
    for (int i = from; i <= to; ++i) {
      const Point2 p = seq[static_cast<std::size_t>(i)];
      if (lead && i == from && same_point(p, *lead, 1e-9)) continue;
      if (trail && i == to && same_point(p, *trail, 1e-9)) continue;
      s.list.push_back(p);
      s.list_to_work.push_back(work_index(i));
    }
    if (trail) {
      s.list.push_back(*trail);
      s.list_to_work.push_back(work_index(to));
    }
    f.sections.push_back(std::move(s));
  };

  const std::size_t m = f.report.anchors.size();
  if (config.closed && m > 0) {
    // Rotate the sequence so every section is contiguous; the rotation start
    // is the first point after the first corner split.
    const int rot = f.report.anchors[0].second;
    std::vector<Point2> rotated(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      rotated[static_cast<std::size_t>(i)] = f.work[static_cast<std::size_t>((rot + i) % n)];
    }
    for (std::size_t j = 0; j < m; ++j) {
      const int from = (f.report.anchors[j].second - rot + n) % n;
      int to = (f.report.anchors[(j + 1) % m].first - rot + n) % n;
      if (j + 1 == m) to = n - 1;
      push_section(&f.report.corners[j], from, to,
                   &f.report.corners[(j + 1) % m], rotated, 0);
      // list_to_work indices are in rotated coordinates; translate back.
      Section& s = f.sections.back();
      for (int& idx : s.list_to_work) idx = (rot + idx) % n;
    }
    f.work = std::move(rotated);
  } else if (config.closed) {
    // No corners on a closed contour: duplicate the seam point and fit the
    // sequence as one section.
    f.work.push_back(f.work.front());
    Section s;
    s.list = f.work;
    s.list_to_work.resize(f.work.size());
    std::iota(s.list_to_work.begin(), s.list_to_work.end(), 0);
    s.list_to_work.back() = 0;
    f.sections.push_back(std::move(s));
  } else {
    for (std::size_t j = 0; j < f.report.sections.size(); ++j) {
      const IndexRange r = f.report.sections[j];
      const Point2* lead = j > 0 ? &f.report.corners[j - 1] : nullptr;
      const Point2* trail = j < m ? &f.report.corners[j] : nullptr;
      push_section(lead, r.first, r.last, trail, f.work, 0);
    }
  }
  return f;
}

void remap_sources(PccCurve& curve, const Section& section) {
  for (ArcSeg& seg : curve.segs) {
    if (seg.src_first <= 0) continue;
    const int lo = std::clamp(seg.src_first - 1, 0,
                              static_cast<int>(section.list_to_work.size()) - 1);
    const int hi = std::clamp(seg.src_last - 1, 0,
                              static_cast<int>(section.list_to_work.size()) - 1);
    seg.src_first = section.list_to_work[static_cast<std::size_t>(lo)] + 1;
    seg.src_last = section.list_to_work[static_cast<std::size_t>(hi)] + 1;
  }
}

/// Adjacent pieces lying on the same line or circle merge into one; used to
/// close the seam of corner-free closed contours.
void merge_seam(PccCurve& curve) {
  if (curve.size() < 2) return;
  ArcSeg& a = curve.segs.front();
  ArcSeg& b = curve.segs.back();
  if (!same_point(b.end, a.start)) return;
  if (a.kind == ArcSeg::Kind::segment && b.kind == ArcSeg::Kind::segment) {
    const Vec2 da = normalized(a.end - a.start);
    const Vec2 db = normalized(b.end - b.start);
    if (dot(da, db) >= 1.0 - 1e-12) {
      b.end = a.end;
      b.src_last = a.src_last;
      curve.segs.erase(curve.segs.begin());
    }
  }
}

PccCurve fit_frame(const Frame& frame, double tol, const PipelineConfig& config) {
  PccCurve curve;
  for (const Section& s : frame.sections) {
    PccCurve piece = fit_section(s, tol, config.method, config.gap_policy);
    remap_sources(piece, s);
    for (const ArcSeg& seg : piece.segs) curve.segs.push_back(seg);
  }
  if (config.closed && frame.report.anchors.empty()) merge_seam(curve);
  return curve;
}

SmoothOutcome smooth_frame(const PccCurve& curve, double tol, double spacing,
                           const PipelineConfig& config) {
  SmoothConfig sc;
  sc.mode = config.smoothing;
  sc.eps_good = config.eps_good;
  sc.epsilon = tol;
  sc.delta = config.smooth_delta;
  sc.rho = config.smooth_rho;
  sc.spacing_hint = spacing;
  return smooth_curve(curve, sc);
}

}  // namespace

PipelineResult run_pipeline(std::span<const Point2> pts, const PipelineConfig& config) {
  if (pts.size() < 2) throw TooFewPoints("run_pipeline: needs at least two points");
  const Frame frame = build_frame(pts, config);
  const double spacing = median_spacing(frame.work);

  PipelineResult result;
  result.corners = frame.report;

  std::vector<double> taus = config.report_tolerances;
  if (taus.empty()) taus = {config.tolerance};

  bool have_main = false;
  for (double tau : taus) {
    const SmoothOutcome smoothed =
        smooth_frame(fit_frame(frame, tau, config), tau, spacing, config);
    ResultRow row;
    row.tolerance = tau;
    for (const ArcSeg& seg : smoothed.curve.segs) {
      if (seg.kind == ArcSeg::Kind::arc) ++row.arcs;
      else ++row.segments;
    }
    for (const Point2& p : pts) {
      if (smoothed.curve.distance_to(p) > tau) ++row.bad_points;
    }
    result.rows.push_back(row);
    if (!have_main && tau == config.tolerance) {
      result.curve = smoothed.curve;
      result.junctions = smoothed.junctions;
      have_main = true;
    }
  }
  if (!have_main) {
    const SmoothOutcome smoothed =
        smooth_frame(fit_frame(frame, config.tolerance, config), config.tolerance,
                     spacing, config);
    result.curve = smoothed.curve;
    result.junctions = smoothed.junctions;
  }

  result.residuals.reserve(pts.size());
  for (const Point2& p : pts) result.residuals.push_back(result.curve.distance_to(p));
  return result;
}

}  // namespace arcfit
