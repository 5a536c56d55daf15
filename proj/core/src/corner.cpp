#include "arcfit/corner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcfit/constrained_fit.hpp"
#include "arcfit/errors.hpp"

namespace arcfit {

namespace {

bool anchor_candidate(std::span<const Point2> pts, int i, const CornerParams& params,
                      double* cos_out) {
  const double c = turn_cosine(pts, i);
  if (cos_out) *cos_out = c;
  if (c < -params.eps_turn) return false;
  const CircleOrLine fit = circle_through_three(pts[i - 1], pts[i], pts[i + 1]);
  if (!std::holds_alternative<Circle>(fit)) return false;
  return std::get<Circle>(fit).radius < params.r_max;
}

double window_residual(std::span<const Point2> window, const CircleOrLine& fit) {
  double worst = 0.0;
  for (const Point2& p : window) worst = std::max(worst, residual(p, fit));
  return worst;
}

CircleOrLine fit_window(std::span<const Point2> window) {
  if (window.size() == 3) {
    return circle_through_three(window[0], window[1], window[2]);
  }
  return taubin_fit(window);
}

struct DetectedCorner {
  std::pair<int, int> pair;
  Point2 corner{};
};

}  // namespace

double turn_cosine(std::span<const Point2> pts, int i) {
  const int n = static_cast<int>(pts.size());
  if (i < 1 || i > n - 2) throw OutOfDomain("turn_cosine: index needs both neighbors");
  const Vec2 back = pts[i - 1] - pts[i];
  const Vec2 fwd = pts[i + 1] - pts[i];
  const double nb = norm(back);
  const double nf = norm(fwd);
  if (nb < 1e-15 || nf < 1e-15) throw DuplicatePoints("turn_cosine: coincident neighbors");
  return dot(back, fwd) / (nb * nf);
}

std::vector<std::pair<int, int>> find_anchor_pairs(std::span<const Point2> pts,
                                                   const CornerParams& params) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::pair<int, int>> pairs;
  if (n < 5) return pairs;

  std::vector<int> candidates;
  std::vector<double> cosines(static_cast<std::size_t>(n), -2.0);
  for (int i = 1; i <= n - 2; ++i) {
    double c;
    if (anchor_candidate(pts, i, params, &c)) {
      candidates.push_back(i);
      cosines[static_cast<std::size_t>(i)] = c;
    }
  }

  auto cosine_at = [&](int i) -> double {
    if (i < 1 || i > n - 2) return -2.0;  // no turn defined at the boundary
    return turn_cosine(pts, i);
  };

  std::size_t c = 0;
  int last_used = -3;
  while (c < candidates.size()) {
    // Maximal run of consecutive candidate indices forms one cluster.
    std::size_t e = c;
    while (e + 1 < candidates.size() && candidates[e + 1] == candidates[e] + 1) ++e;
    int pivot = candidates[c];
    for (std::size_t j = c; j <= e; ++j) {
      if (cosines[static_cast<std::size_t>(candidates[j])] >
          cosines[static_cast<std::size_t>(pivot)]) {
        pivot = candidates[j];
      }
    }

    const double cos_next = cosine_at(pivot + 1);
    const double cos_prev = cosine_at(pivot - 1);
    std::pair<int, int> pair;
    if (cos_next <= -1.5) {
      pair = {pivot - 1, pivot};
    } else if (cos_prev <= -1.5) {
      pair = {pivot, pivot + 1};
    } else if (params.literal_pairing) {
      pair = cos_next <= cos_prev ? std::pair{pivot, pivot + 1} : std::pair{pivot - 1, pivot};
    } else {
      // Pair toward the sharper neighbor, keeping both growth windows on
      // their own side of the corner.
      pair = cos_next >= cos_prev ? std::pair{pivot, pivot + 1} : std::pair{pivot - 1, pivot};
    }
    if (pair.first > last_used) {
      pairs.push_back(pair);
      last_used = pair.second;
    }
    c = e + 1;
  }
  return pairs;
}

GrownArcs grow_taubin_arcs(std::span<const Point2> pts, std::pair<int, int> anchor_pair,
                           const CornerParams& params) {
  const int n = static_cast<int>(pts.size());
  const int a = anchor_pair.first;
  if (anchor_pair.second != a + 1) {
    throw DegenerateInput("grow_taubin_arcs: anchors must be consecutive");
  }
  auto left_ok = [&](int k) { return a - k >= 0; };
  auto right_ok = [&](int h) { return a + h <= n - 1; };
  if (!left_ok(2) || !right_ok(3)) {
    throw InsufficientPoints("grow_taubin_arcs: not enough context around the anchors");
  }

  int k = 3, h = 4;
  bool flag_k = left_ok(k);
  bool flag_h = right_ok(h);
  while (k <= params.m_limit && h <= params.m_limit && (flag_k || flag_h)) {
    if (flag_k) {
      const auto window = pts.subspan(static_cast<std::size_t>(a - k),
                                      static_cast<std::size_t>(k + 1));
      const CircleOrLine fit = fit_window(window);
      if (window_residual(window, fit) < params.delta) {
        ++k;
        if (!left_ok(k)) flag_k = false;
      } else {
        flag_k = false;
      }
    }
    if (flag_h) {
      const auto window = pts.subspan(static_cast<std::size_t>(a + 1),
                                      static_cast<std::size_t>(h));
      const CircleOrLine fit = fit_window(window);
      if (window_residual(window, fit) < params.delta) {
        ++h;
        if (!right_ok(h)) flag_h = false;
      } else {
        flag_h = false;
      }
    }
    if (!flag_k && !flag_h) break;
  }

  GrownArcs out;
  out.k = k - 1;
  out.h = h - 1;
  out.left = fit_window(pts.subspan(static_cast<std::size_t>(a - out.k),
                                    static_cast<std::size_t>(out.k + 1)));
  out.right = fit_window(pts.subspan(static_cast<std::size_t>(a + 1),
                                     static_cast<std::size_t>(out.h)));
  return out;
}

Point2 locate_corner(const CircleOrLine& left, const CircleOrLine& right, Point2 near) {
  const Intersections hits = intersect(left, right);
  if (hits.count == 0) {
    throw NoIntersection("locate_corner: fitted arcs do not intersect");
  }
  Point2 best = hits.pts[0];
  for (int i = 1; i < hits.count; ++i) {
    if (distance(hits.pts[i], near) < distance(best, near)) best = hits.pts[i];
  }
  return best;
}

namespace {

std::vector<DetectedCorner> run_detection(std::span<const Point2> pts,
                                          const CornerParams& params,
                                          std::vector<AnchorDiag>* diags) {
  std::vector<DetectedCorner> found;
  for (const auto& pair : find_anchor_pairs(pts, params)) {
    AnchorDiag diag;
    diag.anchors = pair;
    try {
      const GrownArcs grown = grow_taubin_arcs(pts, pair, params);
      const Point2 corner = locate_corner(grown.left, grown.right, pts[pair.first]);
      diag.k = grown.k;
      diag.h = grown.h;
      diag.left = grown.left;
      diag.right = grown.right;
      diag.ok = true;
      found.push_back({pair, corner});
    } catch (const Error& e) {
      diag.ok = false;
      diag.note = e.what();
    }
    if (diags) diags->push_back(diag);
  }
  return found;
}

}  // namespace

CornerReport detect_corners(std::span<const Point2> pts, const CornerParams& params) {
  const int n = static_cast<int>(pts.size());
  CornerReport report;
  const std::vector<DetectedCorner> found = run_detection(pts, params, &report.diagnostics);
  for (const DetectedCorner& d : found) {
    report.anchors.push_back(d.pair);
    report.corners.push_back(d.corner);
  }
  int start = 0;
  for (const auto& pair : report.anchors) {
    report.sections.push_back({start, pair.first});
    start = pair.second;
  }
  if (n > 0) report.sections.push_back({start, n - 1});
  return report;
}

CornerReport detect_corners_closed(std::span<const Point2> pts, const CornerParams& params) {
  const int n = static_cast<int>(pts.size());
  CornerReport report;
  if (n < 5) {
    if (n > 0) report.sections.push_back({0, n - 1});
    return report;
  }

  // Cyclic extension makes seam-straddling corners visible; detections are
  // folded modulo n afterwards.
  const int context = std::min(n, 2 * params.m_limit + 8);
  std::vector<Point2> ext(pts.begin(), pts.end());
  ext.insert(ext.end(), pts.begin(), pts.begin() + context);

  std::vector<DetectedCorner> found = run_detection(ext, params, &report.diagnostics);

  std::vector<DetectedCorner> unique;  // pairs still carry raw extended indices
  for (const DetectedCorner& d : found) {
    const int canonical = d.pair.first % n;
    bool handled = false;
    for (DetectedCorner& u : unique) {
      const int gap = std::abs(u.pair.first % n - canonical);
      if (std::min(gap, n - gap) <= 2) {
        // The cyclic copy saw more backward context; prefer it.
        if (d.pair.first > u.pair.first) u = d;
        handled = true;
        break;
      }
    }
    if (!handled) unique.push_back(d);
  }
  for (DetectedCorner& d : unique) {
    const int canonical = d.pair.first % n;
    d.pair = {canonical, (canonical + 1) % n};
  }
  std::sort(unique.begin(), unique.end(),
            [](const DetectedCorner& a, const DetectedCorner& b) {
              return a.pair.first < b.pair.first;
            });

  for (const DetectedCorner& d : unique) {
    report.anchors.push_back(d.pair);
    report.corners.push_back(d.corner);
  }
  if (report.anchors.empty()) {
    report.sections.push_back({0, n - 1});
    return report;
  }
  // Cyclic sections between consecutive split points; the last wraps around.
  const std::size_t m = report.anchors.size();
  for (std::size_t j = 0; j < m; ++j) {
    const int from = report.anchors[j].second;
    const int to = report.anchors[(j + 1) % m].first;
    report.sections.push_back({from, to});
  }
  return report;
}

std::vector<Point2> improve_dataset(std::span<const Point2> pts, double gap_factor) {
  const int n = static_cast<int>(pts.size());
  std::vector<Point2> out;
  if (n < 2) {
    out.assign(pts.begin(), pts.end());
    return out;
  }
  std::vector<double> spacing;
  spacing.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i + 1 < n; ++i) spacing.push_back(distance(pts[i], pts[i + 1]));
  std::vector<double> sorted = spacing;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];

  out.reserve(pts.size());
  for (int i = 0; i < n; ++i) {
    out.push_back(pts[i]);
    if (i + 1 >= n || spacing[static_cast<std::size_t>(i)] <= gap_factor * median) continue;

    const Point2 mid = midpoint(pts[i], pts[i + 1]);
    Point2 inserted = mid;
    if (i >= 2 && i + 3 < n) {
      try {
        const CircleOrLine left = circle_through_three(pts[i - 2], pts[i - 1], pts[i]);
        const CircleOrLine right = circle_through_three(pts[i + 1], pts[i + 2], pts[i + 3]);
        const Intersections hits = intersect(left, right);
        if (hits.count > 0) {
          inserted = hits.pts[0];
          if (hits.count > 1 && distance(hits.pts[1], mid) < distance(hits.pts[0], mid)) {
            inserted = hits.pts[1];
          }
        }
      } catch (const Error&) {
        inserted = mid;
      }
    }
    out.push_back(inserted);
  }
  return out;
}

}  // namespace arcfit
