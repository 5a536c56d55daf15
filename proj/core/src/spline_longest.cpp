#include "arcfit/spline_longest.hpp"

#include <algorithm>
#include <cmath>

#include "arcfit/biarc.hpp"
#include "arcfit/errors.hpp"
#include "parallel_for.hpp"

namespace arcfit {

namespace {

ConstrainedArcFit fit_window(std::span<const Point2> pts, int a, int b,
                             const MinimizeOptions& opts) {
  const ChordFrame frame = ChordFrame::between(pts[a], pts[b]);
  return minimize_f(frame, pts.subspan(a + 1, b - a - 1), opts);
}

MinimizeOptions options_for(double epsilon, const MinimizeOptions* fit_opts) {
  MinimizeOptions opts = fit_opts ? *fit_opts : MinimizeOptions{};
  opts.epsilon = epsilon;
  return opts;
}

void check_distinct(std::span<const Point2> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (same_point(pts[i], pts[j], 1e-12)) {
        throw DuplicatePoints("build_m: points must be pairwise distinct");
      }
    }
  }
}

ArcSeg with_span(ArcSeg seg, int first0, int last0) {
  seg.src_first = first0 + 1;
  seg.src_last = last0 + 1;
  return seg;
}

/// Emits the pieces covering a run of k indices with G = 0 that ends at the
/// start of the next selected arc (or at the last data point). The run spans
/// source indices [i - k, i].
struct GapFiller {
  std::span<const Point2> pts;
  double epsilon;
  GapPolicy policy;
  const MinimizeOptions& opts;
  std::vector<ArcSeg>& out;

  void fill(int i, int k, bool has_next_arc, const ArcSeg* next_arc);
  void fill_recursive(int a, int b);
  void fill_segments(int a, int b);
};

void GapFiller::fill_segments(int a, int b) {
  for (int j = a; j < b; ++j) {
    out.push_back(with_span(ArcSeg::make_segment(pts[j], pts[j + 1]), j, j + 1));
  }
}

void GapFiller::fill_recursive(int a, int b) {
  const int count = b - a + 1;
  if (count < 2) return;
  if (count == 2) {
    out.push_back(with_span(ArcSeg::make_segment(pts[a], pts[b]), a, b));
    return;
  }
  if (count == 3) {
    const CircleOrLine c = circle_through_three(pts[a], pts[a + 1], pts[b]);
    if (std::holds_alternative<Circle>(c)) {
      ArcSeg arc = ArcSeg::arc_through_via(pts[a], pts[b],
                                           std::get<Circle>(c).center, pts[a + 1]);
      out.push_back(with_span(arc, a, b));
    } else {
      out.push_back(with_span(ArcSeg::make_segment(pts[a], pts[b]), a, b));
    }
    return;
  }
  // Re-run the whole method on the sub-range.
  const std::span<const Point2> sub = pts.subspan(a, count);
  FitTables tables;
  tables.epsilon = epsilon;
  tables.m = build_m(sub, epsilon, &opts);
  tables.g = select_g(tables.m);
  const SplineBuild nested = build_spline(sub, tables, policy, &opts);
  for (ArcSeg seg : nested.curve.segs) {
    seg.src_first += a;
    seg.src_last += a;
    out.push_back(seg);
  }
}

void GapFiller::fill(int i, int k, bool has_next_arc, const ArcSeg* next_arc) {
  if (k <= 0) return;
  const int a = i - k;  // previous covered index (or the first data point)
  if (k == 1) {
    out.push_back(with_span(ArcSeg::make_segment(pts[i - 1], pts[i]), i - 1, i));
    return;
  }
  if (k == 2) {
    fill_recursive(i - 2, i);
    return;
  }
  if (policy == GapPolicy::biarc && !out.empty() && has_next_arc) {
    const Vec2 ts = tangent_at(out.back(), ArcEndpoint::end);
    const Vec2 te = tangent_at(*next_arc, ArcEndpoint::start);
    const std::span<const Point2> targets = pts.subspan(a + 1, k - 1);
    try {
      const Biarc bi = fit_biarc_ratio(pts[a], ts, pts[i], te, targets);
      out.push_back(with_span(bi.first, a, i));
      out.push_back(with_span(bi.second, a, i));
      return;
    } catch (const Error&) {
      try {
        for (ArcSeg seg : biarc_chain(pts[a], ts, pts[i], te)) {
          out.push_back(with_span(seg, a, i));
        }
        return;
      } catch (const GapUnfillable&) {
        // fall through to recursion
      }
    }
  }
  try {
    fill_recursive(a, i);
  } catch (const Error&) {
    fill_segments(a, i);
  }
}

}  // namespace

std::vector<int> build_m(std::span<const Point2> pts, double epsilon,
                         const MinimizeOptions* fit_opts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw TooFewPoints("build_m: needs at least four points");
  check_distinct(pts);
  const MinimizeOptions opts = options_for(epsilon, fit_opts);

  std::vector<int> m(static_cast<std::size_t>(n), 0);
  // Window growth is independent per start index.
  detail::parallel_for(n - 2, [&](int i) {
    int k = (i == n - 3) ? 2 : 3;
    for (;;) {
      const ConstrainedArcFit fit = fit_window(pts, i, i + k, opts);
      if (fit.max_residual > epsilon) {
        m[static_cast<std::size_t>(i)] = k;
        break;
      }
      ++k;
      if (i + 1 + k > n) {  // next window would run past the data
        m[static_cast<std::size_t>(i)] = k;
        break;
      }
    }
  });
  return m;
}

std::vector<int> select_g(std::span<const int> m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> g(m.begin(), m.end());
  int i = 0;
  while (i < n - 1) {
    const int s = m[static_cast<std::size_t>(i)] / 2;
    const int e = i + m[static_cast<std::size_t>(i)] - 1;
    bool keep = true;
    for (int j = i + 1; j <= i + s && j < n; ++j) {
      if (m[static_cast<std::size_t>(j)] > m[static_cast<std::size_t>(i)]) {
        for (int k = i; k < j; ++k) g[static_cast<std::size_t>(k)] = 0;
        i = j;
        keep = false;
        break;
      }
    }
    if (keep) {
      for (int k = i + 1; k <= e - 1 && k < n; ++k) g[static_cast<std::size_t>(k)] = 0;
      i = e;
    }
  }
  return g;
}

SplineBuild build_spline(std::span<const Point2> pts, const FitTables& tables,
                         GapPolicy policy, const MinimizeOptions* fit_opts) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw TooFewPoints("build_spline: needs at least two points");
  if (static_cast<int>(tables.g.size()) != n) {
    throw DegenerateInput("build_spline: table size does not match point count");
  }
  const MinimizeOptions opts = options_for(tables.epsilon, fit_opts);

  SplineBuild result;
  std::vector<ArcSeg>& out = result.curve.segs;
  GapFiller filler{pts, tables.epsilon, policy, opts, out};

  int i = 0;
  int k = 0;
  while (i < n) {
    if (tables.g[static_cast<std::size_t>(i)] == 0) {
      ++i;
      ++k;
      if (i >= n) {
        --i;
        --k;
        filler.fill(i, k, false, nullptr);
        k = 0;
        ++i;
      }
    } else {
      const int len = tables.g[static_cast<std::size_t>(i)];
      const int last = std::min(i + len - 1, n - 1);
      if (last <= i) {  // malformed table entry; skip but keep advancing
        ++i;
        continue;
      }
      ArcSeg main = last == i + 1
                        ? with_span(ArcSeg::make_segment(pts[i], pts[last]), i, last)
                        : with_span(fit_window(pts, i, last, opts).seg, i, last);
      filler.fill(i, k, true, &main);
      k = 0;
      out.push_back(main);
      i = last;
    }
  }

  result.residuals.reserve(pts.size());
  result.covered.reserve(pts.size());
  for (const Point2& p : pts) {
    const double r = result.curve.distance_to(p);
    result.residuals.push_back(r);
    result.covered.push_back(r <= tables.epsilon);
  }
  return result;
}

}  // namespace arcfit
