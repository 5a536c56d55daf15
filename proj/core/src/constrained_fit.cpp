#include "arcfit/constrained_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "arcfit/errors.hpp"

namespace arcfit {

namespace {

constexpr double kGolden = 0.6180339887498948482;

/// Precomputed per-point terms of the objective in midpoint coordinates:
/// ||P - C(t)||^2 = s - 2*t*w + t^2.
struct ObjectiveTerms {
  std::vector<double> s;
  std::vector<double> w;
  double half_chord2 = 0.0;

  ObjectiveTerms(const ChordFrame& frame, std::span<const Point2> interior) {
    const Point2 mid = midpoint(frame.p0, frame.p1);
    s.reserve(interior.size());
    w.reserve(interior.size());
    for (const Point2& p : interior) {
      const Vec2 q = p - mid;
      s.push_back(norm2(q));
      w.push_back(dot(q, frame.u_perp));
    }
    half_chord2 = 0.25 * frame.d * frame.d;
  }

  double eval(double t) const {
    const double radius = std::sqrt(t * t + half_chord2);
    double acc = 0.0;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double dist = std::sqrt(s[i] - 2.0 * t * w[i] + t * t);
      const double r = radius - dist;
      acc += r * r;
    }
    return acc;
  }

  double max_arc_residual(double t) const {
    const double radius = std::sqrt(t * t + half_chord2);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double dist = std::sqrt(s[i] - 2.0 * t * w[i] + t * t);
      worst = std::max(worst, std::abs(radius - dist));
    }
    return worst;
  }

  double max_line_residual() const {
    double worst = 0.0;
    for (double wi : w) worst = std::max(worst, std::abs(wi));
    return worst;
  }
};

double golden_minimize(const ObjectiveTerms& terms, double a, double b, double tol) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = terms.eval(c);
  double fd = terms.eval(d);
  while (std::abs(b - a) > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = terms.eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = terms.eval(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ChordFrame ChordFrame::between(Point2 a, Point2 b) {
  const double d = distance(a, b);
  if (d <= 0.0) throw DuplicatePoints("chord endpoints coincide");
  ChordFrame f;
  f.p0 = a;
  f.p1 = b;
  f.d = d;
  f.u = (b - a) / d;
  f.u_perp = perp(f.u);
  return f;
}

double objective_f(double t, const ChordFrame& frame, std::span<const Point2> interior) {
  if (interior.empty()) throw TooFewPoints("objective_f: empty interior");
  return ObjectiveTerms(frame, interior).eval(t);
}

double limit_f(const ChordFrame& frame, std::span<const Point2> interior) {
  if (interior.empty()) throw TooFewPoints("limit_f: empty interior");
  double acc = 0.0;
  for (const Point2& p : interior) {
    const double proj = dot(frame.u_perp, frame.p0 - p);
    acc += proj * proj;
  }
  return acc;
}

ConstrainedArcFit minimize_f(const ChordFrame& frame, std::span<const Point2> interior,
                             const MinimizeOptions& opts) {
  if (interior.empty()) throw TooFewPoints("minimize_f: empty interior");
  const ObjectiveTerms terms(frame, interior);

  double spread = 0.0;
  for (const Point2& p : interior) spread = std::max(spread, distance(p, frame.p0));
  const double core = 10.0 * std::max(frame.d, spread);

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(opts.core_samples + 2 * opts.tail_samples + 1));
  grid.push_back(0.0);
  for (int i = 0; i < opts.core_samples; ++i) {
    grid.push_back(-core + (2.0 * core * i) / (opts.core_samples - 1));
  }
  if (core < opts.tail_limit) {
    const double ratio = std::pow(opts.tail_limit / core, 1.0 / opts.tail_samples);
    double t = core;
    for (int i = 0; i < opts.tail_samples; ++i) {
      t *= ratio;
      grid.push_back(t);
      grid.push_back(-t);
    }
  }
  std::sort(grid.begin(), grid.end());

  std::size_t best = 0;
  double best_f = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = terms.eval(grid[i]);
    if (f < best_f) {
      best_f = f;
      best = i;
    }
  }

  const double lo = grid[best > 0 ? best - 1 : 0];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  const double tol = 1e-10 * frame.d;
  double t_star = golden_minimize(terms, lo, hi, tol);
  double f_star = terms.eval(t_star);
  if (best_f < f_star) {
    t_star = grid[best];
    f_star = best_f;
  }

  const double limit = limit_f(frame, interior);
  const double n = static_cast<double>(interior.size());
  const bool line_explains = limit <= n * opts.epsilon * opts.epsilon;
  const bool no_dip = f_star >= limit - std::max(1e-12, 1e-9 * limit);
  const bool radius_capped = frame.radius_at(t_star) > kDegenerateRadius;

  ConstrainedArcFit fit;
  fit.t_star = t_star;
  fit.center = frame.center_at(t_star);
  fit.radius = frame.radius_at(t_star);
  fit.is_segment = (no_dip && line_explains) || radius_capped;

  if (fit.is_segment) {
    fit.seg = ArcSeg::make_segment(frame.p0, frame.p1);
    fit.max_residual = terms.max_line_residual();
    return fit;
  }

  fit.max_residual = terms.max_arc_residual(t_star);

  // The fitted circle carries two arcs through the chord endpoints; take the
  // one on the side holding the majority of the interior points (ties pick
  // the minor arc).
  int plus = 0, minus = 0;
  for (double wi : terms.w) {
    if (wi > 0.0) ++plus;
    else if (wi < 0.0) ++minus;
  }
  double side;
  if (plus > minus) side = 1.0;
  else if (minus > plus) side = -1.0;
  else side = t_star > 0.0 ? -1.0 : 1.0;  // minor arc bulges away from the center
  const Point2 via = fit.center + side * fit.radius * frame.u_perp;
  fit.seg = ArcSeg::arc_through_via(frame.p0, frame.p1, fit.center, via);
  return fit;
}

CircleOrLine taubin_fit(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  if (n < 3) throw DegenerateInput("taubin_fit: needs at least 3 points");
  {
    std::vector<Point2> distinct;
    for (const Point2& p : pts) {
      bool seen = false;
      for (const Point2& q : distinct) {
        if (same_point(p, q, 1e-12)) {
          seen = true;
          break;
        }
      }
      if (!seen) {
        distinct.push_back(p);
        if (distinct.size() == 3) break;
      }
    }
    if (distinct.size() < 3) throw DegenerateInput("taubin_fit: needs 3 distinct points");
  }

  double mean_x = 0.0, mean_y = 0.0;
  for (const Point2& p : pts) {
    mean_x += p.x;
    mean_y += p.y;
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double mxx = 0.0, myy = 0.0, mxy = 0.0, mxz = 0.0, myz = 0.0, mzz = 0.0;
  for (const Point2& p : pts) {
    const double xi = p.x - mean_x;
    const double yi = p.y - mean_y;
    const double zi = xi * xi + yi * yi;
    mxx += xi * xi;
    myy += yi * yi;
    mxy += xi * yi;
    mxz += xi * zi;
    myz += yi * zi;
    mzz += zi * zi;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  mxx *= inv_n;
  myy *= inv_n;
  mxy *= inv_n;
  mxz *= inv_n;
  myz *= inv_n;
  mzz *= inv_n;

  // Characteristic cubic of the Taubin constraint pencil; Newton from zero
  // converges to its smallest nonnegative root.
  const double mz = mxx + myy;
  const double cov_xy = mxx * myy - mxy * mxy;
  const double var_z = mzz - mz * mz;
  const double a3 = 4.0 * mz;
  const double a2 = -3.0 * mz * mz - mzz;
  const double a1 = var_z * mz + 4.0 * cov_xy * mz - mxz * mxz - myz * myz;
  const double a0 =
      mxz * (mxz * myy - myz * mxy) + myz * (myz * mxx - mxz * mxy) - var_z * cov_xy;
  const double a22 = a2 + a2;
  const double a33 = a3 + a3 + a3;

  double x = 0.0;
  double y = a0;
  for (int iter = 0; iter < 99; ++iter) {
    const double dy = a1 + x * (a22 + x * a33);
    const double x_new = x - y / dy;
    if (!std::isfinite(x_new) || x_new == x) break;
    const double y_new = a0 + x_new * (a1 + x_new * (a2 + x_new * a3));
    if (std::abs(y_new) >= std::abs(y)) break;
    x = x_new;
    y = y_new;
  }

  const double det = x * x - x * mz + cov_xy;
  const double det_floor = 1e-14 * std::max(mz * mz, 1e-30);
  if (std::abs(det) < det_floor) {
    return fit_line_tls(pts.data(), static_cast<int>(n));
  }
  const double xc = (mxz * (myy - x) - myz * mxy) / det / 2.0;
  const double yc = (myz * (mxx - x) - mxz * mxy) / det / 2.0;
  const double radius = std::sqrt(xc * xc + yc * yc + mz);
  if (!std::isfinite(radius) || radius > kDegenerateRadius) {
    return fit_line_tls(pts.data(), static_cast<int>(n));
  }
  return Circle{Point2{xc + mean_x, yc + mean_y}, radius};
}

}  // namespace arcfit
