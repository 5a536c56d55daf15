#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arcfit::oracles {

namespace {

struct Frame {
  Point2 p0, p1;
  Point2 mid;
  double d;
  Vec2 u_perp;
};

Frame make_frame(Point2 p0, Point2 p1) {
  Frame f;
  f.p0 = p0;
  f.p1 = p1;
  f.mid = midpoint(p0, p1);
  f.d = distance(p0, p1);
  f.u_perp = perp((p1 - p0) / f.d);
  return f;
}

Point2 center_at(const Frame& f, double t) { return f.mid + t * f.u_perp; }

double objective_at(const Frame& f, std::span<const Point2> interior, double t) {
  const Point2 c = center_at(f, t);
  const double radius = std::hypot(t, 0.5 * f.d);
  double acc = 0.0;
  for (const Point2& p : interior) {
    const double r = radius - distance(p, c);
    acc += r * r;
  }
  return acc;
}

}  // namespace

double direct_objective(std::span<const Point2> interior, Point2 p0, Point2 p1, double t) {
  return objective_at(make_frame(p0, p1), interior, t);
}

double direct_limit(std::span<const Point2> interior, Point2 p0, Point2 p1) {
  const Frame f = make_frame(p0, p1);
  double acc = 0.0;
  for (const Point2& p : interior) {
    const double proj = dot(f.u_perp, p0 - p);
    acc += proj * proj;
  }
  return acc;
}

WindowVerdict grid_fit_window(std::span<const Point2> pts, int a, int b, double epsilon,
                              int core_samples) {
  const Frame f = make_frame(pts[a], pts[b]);
  const std::span<const Point2> interior = pts.subspan(a + 1, b - a - 1);

  double spread = 0.0;
  for (const Point2& p : interior) spread = std::max(spread, distance(p, pts[a]));
  const double core = 10.0 * std::max(f.d, spread);

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(core_samples) + 1026);
  for (int i = 0; i < core_samples; ++i) {
    grid.push_back(-core + 2.0 * core * i / (core_samples - 1));
  }
  grid.push_back(0.0);
  const double tail_limit = 1e8;
  if (core < tail_limit) {
    const int tail = 512;
    const double ratio = std::pow(tail_limit / core, 1.0 / tail);
    double t = core;
    for (int i = 0; i < tail; ++i) {
      t *= ratio;
      grid.push_back(t);
      grid.push_back(-t);
    }
  }

  double best_t = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  double best_step = core;
  std::sort(grid.begin(), grid.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = objective_at(f, interior, grid[i]);
    if (v < best_f) {
      best_f = v;
      best_t = grid[i];
      const double left = i > 0 ? grid[i] - grid[i - 1] : grid[1] - grid[0];
      const double right = i + 1 < grid.size() ? grid[i + 1] - grid[i] : left;
      best_step = std::max(left, right);
    }
  }
  // Local re-gridding refinement.
  double width = best_step;
  for (int round = 0; round < 12; ++round) {
    const int local = 33;
    double lo = best_t - width;
    double hi = best_t + width;
    for (int i = 0; i < local; ++i) {
      const double t = lo + (hi - lo) * i / (local - 1);
      const double v = objective_at(f, interior, t);
      if (v < best_f) {
        best_f = v;
        best_t = t;
      }
    }
    width /= 8.0;
  }

  WindowVerdict verdict;
  verdict.t = best_t;
  const double limit = direct_limit(interior, pts[a], pts[b]);
  const double n = static_cast<double>(interior.size());
  const bool line_explains = limit <= n * epsilon * epsilon;
  const bool no_dip = best_f >= limit - std::max(1e-12, 1e-9 * limit);
  const double radius = std::hypot(best_t, 0.5 * f.d);
  verdict.is_segment = (no_dip && line_explains) || radius > kDegenerateRadius;
  if (verdict.is_segment) {
    double worst = 0.0;
    for (const Point2& p : interior) {
      worst = std::max(worst, std::abs(dot(f.u_perp, p - pts[a])));
    }
    verdict.max_residual = worst;
  } else {
    const Point2 c = center_at(f, best_t);
    double worst = 0.0;
    for (const Point2& p : interior) {
      worst = std::max(worst, std::abs(radius - distance(p, c)));
    }
    verdict.max_residual = worst;
  }
  return verdict;
}

std::vector<int> naive_build_m(std::span<const Point2> pts, double epsilon) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> m(static_cast<std::size_t>(n), 0);
  for (int i = 0; i <= n - 3; ++i) {
    if (i > n - 3) break;
    int k = (i == n - 3) ? 2 : 3;
    for (;;) {
      const WindowVerdict v = grid_fit_window(pts, i, i + k, epsilon, 4001);
      if (v.max_residual > epsilon) {
        m[static_cast<std::size_t>(i)] = k;
        break;
      }
      ++k;
      if (i + 1 + k > n) {
        m[static_cast<std::size_t>(i)] = k;
        break;
      }
    }
  }
  return m;
}

double taubin_objective(std::span<const Point2> pts, Point2 center, double radius) {
  double num = 0.0;
  double den = 0.0;
  for (const Point2& p : pts) {
    const double r2 = norm2(p - center);
    const double resid = r2 - radius * radius;
    num += resid * resid;
    den += r2;
  }
  den *= 4.0 / static_cast<double>(pts.size());
  return num / den;
}

double taubin_best_radius(std::span<const Point2> pts, Point2 center) {
  double acc = 0.0;
  for (const Point2& p : pts) acc += norm2(p - center);
  return std::sqrt(acc / static_cast<double>(pts.size()));
}

double taubin_grid_search(std::span<const Point2> pts, int rounds, int grid) {
  double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  for (const Point2& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span = std::max(max_x - min_x, max_y - min_y);
  Point2 best_c{0.5 * (min_x + max_x), 0.5 * (min_y + max_y)};
  double width = 40.0 * std::max(span, 1e-9);
  double best = std::numeric_limits<double>::infinity();
  for (int round = 0; round < rounds; ++round) {
    const Point2 base = best_c;
    for (int ix = 0; ix < grid; ++ix) {
      for (int iy = 0; iy < grid; ++iy) {
        const Point2 c{base.x - width + 2.0 * width * ix / (grid - 1),
                       base.y - width + 2.0 * width * iy / (grid - 1)};
        const double r = taubin_best_radius(pts, c);
        const double v = taubin_objective(pts, c, r);
        if (v < best) {
          best = v;
          best_c = c;
        }
      }
    }
    width *= 2.5 / (grid - 1);
  }
  return best;
}

}  // namespace arcfit::oracles
