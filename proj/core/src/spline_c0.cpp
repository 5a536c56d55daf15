#include "arcfit/spline_c0.hpp"

#include <algorithm>

#include "arcfit/errors.hpp"

namespace arcfit {

namespace {

ConstrainedArcFit fit_window(std::span<const Point2> pts, int a, int b,
                             const MinimizeOptions& opts) {
  const ChordFrame frame = ChordFrame::between(pts[a], pts[b]);
  return minimize_f(frame, pts.subspan(a + 1, b - a - 1), opts);
}

void emit_window(std::span<const Point2> pts, int a, int b, double epsilon,
                 const MinimizeOptions& opts, std::vector<ArcSeg>& out) {
  if (b <= a) return;
  if (b == a + 1) {
    ArcSeg seg = ArcSeg::make_segment(pts[a], pts[b]);
    seg.src_first = a + 1;
    seg.src_last = b + 1;
    out.push_back(seg);
    return;
  }
  const ConstrainedArcFit fit = fit_window(pts, a, b, opts);
  if (fit.max_residual <= epsilon || b - a + 1 == 3) {
    ArcSeg seg = fit.seg;
    seg.src_first = a + 1;
    seg.src_last = b + 1;
    out.push_back(seg);
    return;
  }
  // A sub-window of a feasible window is only prefix-guaranteed; a failing
  // re-fit is split at the midpoint until the residual contract holds.
  const int mid = a + (b - a) / 2;
  emit_window(pts, a, mid, epsilon, opts, out);
  emit_window(pts, mid, b, epsilon, opts, out);
}

}  // namespace

std::vector<int> select_g_c0(std::span<const int> m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> g(m.begin(), m.end());
  int i = 0;
  while (i < n - 2) {
    const int mi = m[static_cast<std::size_t>(i)];
    const int e = i + mi - 1;
    // Default pair: the full window, then whatever starts at its end. A dead
    // tail degenerates the pair to the single-arc score.
    int z = m[static_cast<std::size_t>(e)] == 0 ? mi : mi + m[static_cast<std::size_t>(e)] - 1;
    int k = i;
    for (int j = i + 2; j <= i + mi - 2 && j < n; ++j) {
      const int score = j - i + m[static_cast<std::size_t>(j)];
      if (score > z) {
        z = score;
        k = j;
      }
    }
    for (int j = i + 1; j < k; ++j) g[static_cast<std::size_t>(j)] = 0;
    const int mk = m[static_cast<std::size_t>(k)];
    for (int j = k + 1; j <= k + mk - 2 && j < n; ++j) g[static_cast<std::size_t>(j)] = 0;
    if (i != k) g[static_cast<std::size_t>(i)] = k - i + 1;
    i = k + mk - 1;
  }
  return g;
}

SplineBuild build_spline_c0(std::span<const Point2> pts, std::span<const int> g,
                            double epsilon, const MinimizeOptions* fit_opts) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw TooFewPoints("build_spline_c0: needs at least two points");
  if (static_cast<int>(g.size()) != n) {
    throw DegenerateInput("build_spline_c0: table size does not match point count");
  }
  MinimizeOptions opts = fit_opts ? *fit_opts : MinimizeOptions{};
  opts.epsilon = epsilon;

  SplineBuild result;
  int pos = 0;
  while (pos < n - 1 && g[static_cast<std::size_t>(pos)] > 0) {
    const int end = std::min(pos + g[static_cast<std::size_t>(pos)] - 1, n - 1);
    if (end <= pos) break;
    emit_window(pts, pos, end, epsilon, opts, result.curve.segs);
    pos = end;
  }
  if (pos == n - 2) {
    // Chain stopped one point early; close with a segment.
    ArcSeg tail = ArcSeg::make_segment(pts[static_cast<std::size_t>(n - 2)],
                                       pts[static_cast<std::size_t>(n - 1)]);
    tail.src_first = n - 1;
    tail.src_last = n;
    result.curve.segs.push_back(tail);
  }

  result.residuals.reserve(pts.size());
  result.covered.reserve(pts.size());
  for (const Point2& p : pts) {
    const double r = result.curve.distance_to(p);
    result.residuals.push_back(r);
    result.covered.push_back(r <= epsilon);
  }
  return result;
}

}  // namespace arcfit
