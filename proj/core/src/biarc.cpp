#include "arcfit/biarc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcfit/errors.hpp"

namespace arcfit {

namespace {

constexpr double kParallelTol = 1e-12;  // tangent-alignment test for Eq. admissibility
constexpr double kClosureRelTol = 1e-10;
constexpr double kMinSweep = 1e-7;  // arcs flatter than this become segments

/// Circular arc from an isosceles control triple: tangent to b0->b1 at b0 and
/// to b1->b2 at b2. The center sits on the inner side of the turn at b1.
ArcSeg arc_from_control(Point2 b0, Point2 b1, Point2 b2) {
  const Vec2 ab_raw = b1 - b0;
  const Vec2 bc_raw = b2 - b1;
  if (norm(ab_raw) < 1e-15 || norm(bc_raw) < 1e-15) {
    return ArcSeg::make_segment(b0, b2);
  }
  const Vec2 ab = normalized(ab_raw);
  const Vec2 bc = normalized(bc_raw);
  const double turn = cross(ab, bc);
  const double cos2t = dot(ab, bc);
  if (std::abs(turn) < kParallelTol) {
    return ArcSeg::make_segment(b0, b2);
  }
  const double theta = std::atan(std::sqrt((1.0 - cos2t) / (1.0 + cos2t)));
  if (2.0 * theta < kMinSweep) {
    return ArcSeg::make_segment(b0, b2);
  }
  const double radius = std::sqrt((1.0 + cos2t) / (1.0 - cos2t)) * norm(ab_raw);
  const Point2 center = b1 + (radius / std::cos(theta)) * normalized(bc - ab);
  return ArcSeg::make_arc(b0, b2, center,
                          turn > 0.0 ? Orientation::ccw : Orientation::cw);
}

struct ClosureTerms {
  double vv, vts, vte, tt, d;
};

ClosureTerms closure_terms(Vec2 v, Vec2 ts, Vec2 te) {
  return {dot(v, v), dot(v, ts), dot(v, te), dot(ts, te) - 1.0, norm(v)};
}

}  // namespace

bool biarc_admissible(Point2 ps, Vec2 ts, Point2 pe, Vec2 te) {
  const Vec2 v = pe - ps;
  const auto c = closure_terms(v, ts, te);
  if (c.vv <= 0.0) return false;
  if (std::abs(c.tt) <= kParallelTol) return false;  // ts.te = 1
  const double rhs = 2.0 * c.vts * c.vte / c.tt;
  if (std::abs(c.vv - rhs) <= kClosureRelTol * std::max(std::abs(c.vv), std::abs(rhs))) {
    return false;
  }
  return true;
}

double beta_of_alpha(double alpha, Vec2 v, Vec2 ts, Vec2 te) {
  const auto c = closure_terms(v, ts, te);
  const double den = 2.0 * alpha * c.tt - 2.0 * c.vte;
  if (std::abs(den) < 1e-14) throw DenominatorZero("beta_of_alpha: closure denominator vanishes");
  return (2.0 * alpha * c.vts - c.vv) / den;
}

double choose_alpha(Vec2 v, Vec2 ts, Vec2 te) {
  const auto c = closure_terms(v, ts, te);
  if (std::abs(c.tt) <= kParallelTol) throw Inadmissible("choose_alpha: aligned tangents");
  const double rhs = 2.0 * c.vts * c.vte / c.tt;
  if (std::abs(c.vv - rhs) <= kClosureRelTol * std::max(std::abs(c.vv), std::abs(rhs))) {
    throw Inadmissible("choose_alpha: degenerate closure");
  }
  const double alpha2 = c.vte / c.tt;
  const double k = c.vts / c.tt;
  double alpha;
  if (k >= 0.0) {
    // K > 0 and the K = 0 boundary share the same open-ended interval.
    alpha = std::max(alpha2, 0.0) + 0.5 * c.d;
  } else {
    const double alpha1 = c.vv / (2.0 * c.vts);
    if (alpha2 <= 0.0) {
      alpha = 0.5 * alpha1;  // interval (0, alpha1)
    } else {
      alpha = 0.5 * (alpha1 + alpha2);  // interval between alpha1 and alpha2
    }
  }
  return alpha;
}

Biarc build_biarc(Point2 ps, Vec2 ts, Point2 pe, Vec2 te,
                  std::optional<double> alpha_in, std::optional<double> ratio) {
  ts = normalized(ts);
  te = normalized(te);
  if (!biarc_admissible(ps, ts, pe, te)) {
    throw Inadmissible("build_biarc: configuration admits no single biarc");
  }
  const Vec2 v = pe - ps;
  const auto c = closure_terms(v, ts, te);

  double alpha, beta;
  if (alpha_in) {
    alpha = *alpha_in;
    beta = beta_of_alpha(alpha, v, ts, te);
    if (alpha <= 0.0 || beta <= 0.0) {
      throw NegativeBeta("build_biarc: tangent legs must be positive");
    }
  } else if (ratio) {
    const double r = *ratio;
    if (r <= 0.0) throw Inadmissible("build_biarc: ratio must be positive");
    // Closure with alpha = r*beta is quadratic in beta; the root product is
    // negative (tt < 0), so exactly one positive root exists.
    const double qa = 2.0 * r * c.tt;
    const double qb = -2.0 * (r * c.vts + c.vte);
    const double qc = c.vv;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) throw Inadmissible("build_biarc: ratio closure has no real root");
    const double sq = std::sqrt(disc);
    const double b1 = (-qb + sq) / (2.0 * qa);
    const double b2 = (-qb - sq) / (2.0 * qa);
    beta = std::max(b1, b2);
    if (beta <= 0.0) throw NegativeBeta("build_biarc: no positive leg for this ratio");
    alpha = r * beta;
  } else {
    alpha = choose_alpha(v, ts, te);
    beta = beta_of_alpha(alpha, v, ts, te);
    if (beta <= 0.0) throw NegativeBeta("build_biarc: lemma alpha produced beta <= 0");
  }

  Biarc b;
  b.ps = ps;
  b.pe = pe;
  b.alpha = alpha;
  b.beta = beta;
  b.p1 = ps + alpha * ts;
  b.p3 = pe - beta * te;
  const double inv = 1.0 / (alpha + beta);
  b.p2 = Point2{(beta * b.p1.x + alpha * b.p3.x) * inv,
                (beta * b.p1.y + alpha * b.p3.y) * inv};
  b.first = arc_from_control(ps, b.p1, b.p2);
  b.second = arc_from_control(b.p2, b.p3, pe);
  return b;
}

std::vector<ArcSeg> biarc_chain(Point2 ps, Vec2 ts, Point2 pe, Vec2 te) {
  ts = normalized(ts);
  te = normalized(te);
  if (biarc_admissible(ps, ts, pe, te)) {
    const Biarc b = build_biarc(ps, ts, pe, te);
    return {b.first, b.second};
  }

  // No single biarc: insert a midpoint off the chord along the bisector of
  // the travel directions and connect with two consecutive biarcs.
  const Point2 base = midpoint(ps, pe);
  const double d = distance(ps, pe);
  if (d <= 0.0) throw GapUnfillable("biarc_chain: coincident endpoints");
  Vec2 bisector = ts - te;
  if (norm(bisector) < 1e-9) bisector = perp(ts);
  bisector = normalized(bisector);
  Vec2 tm = ts + te;
  tm = norm(tm) < 1e-9 ? normalized(pe - ps) : normalized(tm);

  for (double h : {0.25 * d, -0.25 * d, 0.125 * d, -0.125 * d, 0.5 * d, -0.5 * d}) {
    const Point2 m = base + h * bisector;
    if (same_point(m, ps) || same_point(m, pe)) continue;
    if (!biarc_admissible(ps, ts, m, tm) || !biarc_admissible(m, tm, pe, te)) continue;
    const Biarc b1 = build_biarc(ps, ts, m, tm);
    const Biarc b2 = build_biarc(m, tm, pe, te);
    return {b1.first, b1.second, b2.first, b2.second};
  }
  throw GapUnfillable("biarc_chain: no admissible split found");
}

Biarc fit_biarc_ratio(Point2 ps, Vec2 ts, Point2 pe, Vec2 te,
                      std::span<const Point2> targets) {
  ts = normalized(ts);
  te = normalized(te);
  auto deviation = [&](double r) -> double {
    try {
      const Biarc b = build_biarc(ps, ts, pe, te, std::nullopt, r);
      double worst = 0.0;
      for (const Point2& p : targets) worst = std::max(worst, b.distance_to(p));
      return worst;
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  if (targets.empty()) return build_biarc(ps, ts, pe, te, std::nullopt, 1.0);

  const double lo = std::log(1.0 / 8.0);
  const double hi = std::log(8.0);
  // Coarse pass keeps the golden refinement out of the wrong basin.
  double best_u = 0.0;
  double best_dev = std::numeric_limits<double>::infinity();
  constexpr int kSeeds = 17;
  for (int i = 0; i < kSeeds; ++i) {
    const double u = lo + (hi - lo) * i / (kSeeds - 1);
    const double dev = deviation(std::exp(u));
    if (dev < best_dev) {
      best_dev = dev;
      best_u = u;
    }
  }
  const double span = (hi - lo) / (kSeeds - 1);
  double a = best_u - span, b = best_u + span;
  constexpr double kGolden = 0.6180339887498948482;
  double c = b - kGolden * (b - a);
  double e = a + kGolden * (b - a);
  double fc = deviation(std::exp(c));
  double fe = deviation(std::exp(e));
  for (int it = 0; it < 48; ++it) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - kGolden * (b - a);
      fc = deviation(std::exp(c));
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + kGolden * (b - a);
      fe = deviation(std::exp(e));
    }
  }
  const double r = std::exp(std::clamp(0.5 * (a + b), lo, hi));
  return build_biarc(ps, ts, pe, te, std::nullopt, r);
}

Point2 RationalArcBezier::eval(double t) const {
  const double b0 = (1.0 - t) * (1.0 - t);
  const double b1 = 2.0 * t * (1.0 - t);
  const double b2 = t * t;
  const double den = b0 + b1 * w1 + b2;
  return Point2{(b0 * p0.x + b1 * w1 * p1.x + b2 * p2.x) / den,
                (b0 * p0.y + b1 * w1 * p1.y + b2 * p2.y) / den};
}

RationalArcBezier arc_to_bezier(Point2 b0, Point2 b1, Point2 b2) {
  const Vec2 ab_raw = b1 - b0;
  const Vec2 bc_raw = b2 - b1;
  const Vec2 ab = normalized(ab_raw);
  const Vec2 bc = normalized(bc_raw);
  if (std::abs(cross(ab, bc)) < kParallelTol) {
    throw CollinearControls("arc_to_bezier: flat control triple");
  }
  const double leg_a = norm(ab_raw);
  const double leg_b = norm(bc_raw);
  if (std::abs(leg_a - leg_b) > 1e-9 * std::max(leg_a, leg_b)) {
    throw DegenerateInput("arc_to_bezier: control polygon not isosceles");
  }
  const double d = dot(ab, bc);  // cos(2*theta)
  RationalArcBezier r;
  r.p0 = b0;
  r.p1 = b1;
  r.p2 = b2;
  r.theta = std::atan(std::sqrt((1.0 - d) / (1.0 + d)));
  r.w1 = std::cos(r.theta);
  r.radius = std::sqrt((1.0 + d) / (1.0 - d)) * leg_a;
  r.center = b1 + (r.radius / r.w1) * normalized(bc - ab);
  return r;
}

void control_of_arc(const ArcSeg& arc, Point2& b0, Point2& b1, Point2& b2) {
  const double half = 0.5 * arc.sweep();
  const double leg = arc.radius * std::tan(half);
  b0 = arc.start;
  b1 = arc.start + leg * tangent_at(arc, ArcEndpoint::start);
  b2 = arc.end;
}

Point2 pcc_eval(const PccCurve& curve, double t) {
  const int n = curve.size();
  if (n == 0) throw OutOfDomain("pcc_eval: empty curve");
  if (t < 0.0 || t > static_cast<double>(n)) {
    throw OutOfDomain("pcc_eval: parameter outside [0, n]");
  }
  int i = static_cast<int>(std::floor(t));
  if (i >= n) i = n - 1;
  const double s = t - static_cast<double>(i);
  const ArcSeg& seg = curve.segs[static_cast<std::size_t>(i)];

  if (seg.kind == ArcSeg::Kind::segment) {
    return seg.point_at(s);
  }
  constexpr double kPi = 3.14159265358979323846;
  if (seg.sweep() < kPi - 1e-9) {
    Point2 b0, b1, b2;
    control_of_arc(seg, b0, b1, b2);
    return arc_to_bezier(b0, b1, b2).eval(s);
  }
  // Wide arcs split at the angular midpoint into two Bezier-representable halves.
  const Point2 mid = seg.point_at(0.5);
  const ArcSeg left = ArcSeg::make_arc(seg.start, mid, seg.center, seg.orient);
  const ArcSeg right = ArcSeg::make_arc(mid, seg.end, seg.center, seg.orient);
  const ArcSeg& half = s < 0.5 ? left : right;
  const double local = s < 0.5 ? 2.0 * s : 2.0 * s - 1.0;
  Point2 b0, b1, b2;
  control_of_arc(half, b0, b1, b2);
  return arc_to_bezier(b0, b1, b2).eval(local);
}

}  // namespace arcfit
