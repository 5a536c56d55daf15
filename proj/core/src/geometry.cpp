#include "arcfit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcfit/errors.hpp"

namespace arcfit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_positive(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

double angle_of(Point2 p, Point2 center) {
  return std::atan2(p.y - center.y, p.x - center.x);
}

}  // namespace

ArcSeg ArcSeg::make_segment(Point2 a, Point2 b) {
  ArcSeg s;
  s.kind = Kind::segment;
  s.start = a;
  s.end = b;
  return s;
}

ArcSeg ArcSeg::make_arc(Point2 start, Point2 end, Point2 center, Orientation o) {
  ArcSeg s;
  s.kind = Kind::arc;
  s.start = start;
  s.end = end;
  s.center = center;
  s.radius = distance(start, center);
  s.orient = o;
  return s;
}

ArcSeg ArcSeg::arc_through_via(Point2 start, Point2 end, Point2 center, Point2 via) {
  ArcSeg s = make_arc(start, end, center, Orientation::ccw);
  if (!s.angle_contains(via)) s.orient = Orientation::cw;
  return s;
}

double ArcSeg::sweep() const {
  if (kind == Kind::segment) return 0.0;
  const double ts = angle_of(start, center);
  const double te = angle_of(end, center);
  double d = orient == Orientation::ccw ? te - ts : ts - te;
  d = wrap_positive(d);
  if (d == 0.0) d = kTwoPi;  // coincident endpoints trace the full circle
  return d;
}

double ArcSeg::length() const {
  if (kind == Kind::segment) return distance(start, end);
  return radius * sweep();
}

Point2 ArcSeg::point_at(double u) const {
  if (kind == Kind::segment) {
    return {start.x + u * (end.x - start.x), start.y + u * (end.y - start.y)};
  }
  const double ts = angle_of(start, center);
  const double sgn = orient == Orientation::ccw ? 1.0 : -1.0;
  const double a = ts + sgn * u * sweep();
  return {center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
}

Vec2 ArcSeg::start_tangent() const { return tangent_at(*this, ArcEndpoint::start); }
Vec2 ArcSeg::end_tangent() const { return tangent_at(*this, ArcEndpoint::end); }

bool ArcSeg::angle_contains(Point2 p) const {
  if (kind == Kind::segment) return false;
  const double ts = angle_of(start, center);
  const double ang = angle_of(p, center);
  double d = orient == Orientation::ccw ? ang - ts : ts - ang;
  d = wrap_positive(d);
  const double slack = 1e-9;
  return d <= sweep() + slack || d >= kTwoPi - slack;
}

double ArcSeg::distance_to(Point2 p) const {
  if (kind == Kind::segment) {
    const Vec2 ab = end - start;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return distance(p, start);
    double t = dot(p - start, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, start + t * ab);
  }
  if (angle_contains(p)) {
    return std::abs(distance(p, center) - radius);
  }
  return std::min(distance(p, start), distance(p, end));
}

bool PccCurve::is_chained(double tol) const {
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (!same_point(segs[i - 1].end, segs[i].start, tol)) return false;
  }
  return true;
}

double PccCurve::distance_to(Point2 p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const ArcSeg& s : segs) best = std::min(best, s.distance_to(p));
  return best;
}

double PccCurve::length() const {
  double total = 0.0;
  for (const ArcSeg& s : segs) total += s.length();
  return total;
}

Vec2 tangent_at(const ArcSeg& seg, ArcEndpoint which) {
  return tangent_on(seg, which == ArcEndpoint::start ? seg.start : seg.end);
}

Vec2 tangent_on(const ArcSeg& seg, Point2 p) {
  if (seg.kind == ArcSeg::Kind::segment) {
    return normalized(seg.end - seg.start);
  }
  const Vec2 radial = normalized(p - seg.center);
  return seg.orient == Orientation::ccw ? perp(radial) : -perp(radial);
}

CircleOrLine circle_through_three(Point2 a, Point2 b, Point2 c, double radius_cap) {
  const double dup_tol = 1e-12;
  if (same_point(a, b, dup_tol) || same_point(b, c, dup_tol) || same_point(a, c, dup_tol)) {
    throw DuplicatePoints("circle_through_three: coincident input points");
  }
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double det = 2.0 * cross(ab, ac);
  const double lab = norm2(ab);
  const double lac = norm2(ac);
  auto as_line = [&]() -> CircleOrLine {
    // Direction along the largest spread of the triple.
    const Vec2 bc = c - b;
    Vec2 dir = ab;
    if (norm2(ac) > norm2(dir)) dir = ac;
    if (norm2(bc) > norm2(dir)) dir = bc;
    return Line{a, normalized(dir)};
  };
  if (det == 0.0) return as_line();
  const double ox = (ac.y * lab - ab.y * lac) / det;
  const double oy = (ab.x * lac - ac.x * lab) / det;
  const double radius = std::hypot(ox, oy);
  if (!(radius <= radius_cap) || !std::isfinite(radius)) return as_line();
  return Circle{Point2{a.x + ox, a.y + oy}, radius};
}

Intersections circle_circle_intersection(const Circle& c1, const Circle& c2) {
  Intersections out;
  const double d = distance(c1.center, c2.center);
  if (d == 0.0) return out;  // concentric: none (or infinitely many)
  const double tangent_tol = 1e-9;
  const double sum = c1.radius + c2.radius;
  const double diff = std::abs(c1.radius - c2.radius);
  const Vec2 u = (c2.center - c1.center) / d;
  const double a = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
  if (std::abs(d - sum) < tangent_tol || std::abs(d - diff) < tangent_tol) {
    out.count = 1;
    out.pts[0] = c1.center + a * u;
    return out;
  }
  if (d > sum || d < diff) return out;
  const double h2 = c1.radius * c1.radius - a * a;
  if (h2 < 0.0) return out;
  const double h = std::sqrt(h2);
  const Vec2 n = perp(u);
  out.count = 2;
  out.pts[0] = c1.center + a * u + h * n;
  out.pts[1] = c1.center + a * u - h * n;
  return out;
}

Intersections circle_line_intersection(const Circle& c, const Line& l) {
  Intersections out;
  const Vec2 dir = normalized(l.dir);
  const double t0 = dot(c.center - l.point, dir);
  const Point2 foot = l.point + t0 * dir;
  const double dist = distance(c.center, foot);
  const double tangent_tol = 1e-9;
  if (std::abs(dist - c.radius) < tangent_tol) {
    out.count = 1;
    out.pts[0] = foot;
    return out;
  }
  if (dist > c.radius) return out;
  const double half = std::sqrt(std::max(0.0, c.radius * c.radius - dist * dist));
  out.count = 2;
  out.pts[0] = foot + half * dir;
  out.pts[1] = foot - half * dir;
  return out;
}

Intersections line_line_intersection(const Line& a, const Line& b) {
  Intersections out;
  const double den = cross(a.dir, b.dir);
  if (std::abs(den) < kUnitTol) return out;  // parallel
  const double t = cross(b.point - a.point, b.dir) / den;
  out.count = 1;
  out.pts[0] = a.point + t * a.dir;
  return out;
}

Intersections intersect(const CircleOrLine& a, const CircleOrLine& b) {
  if (std::holds_alternative<Circle>(a) && std::holds_alternative<Circle>(b)) {
    return circle_circle_intersection(std::get<Circle>(a), std::get<Circle>(b));
  }
  if (std::holds_alternative<Circle>(a) && std::holds_alternative<Line>(b)) {
    return circle_line_intersection(std::get<Circle>(a), std::get<Line>(b));
  }
  if (std::holds_alternative<Line>(a) && std::holds_alternative<Circle>(b)) {
    return circle_line_intersection(std::get<Circle>(b), std::get<Line>(a));
  }
  return line_line_intersection(std::get<Line>(a), std::get<Line>(b));
}

double radial_residual(Point2 p, const Circle& c) {
  return std::abs(c.radius - distance(p, c.center));
}

double line_residual(Point2 p, const Line& l) {
  return std::abs(cross(normalized(l.dir), p - l.point));
}

double residual(Point2 p, const CircleOrLine& cl) {
  if (std::holds_alternative<Circle>(cl)) return radial_residual(p, std::get<Circle>(cl));
  return line_residual(p, std::get<Line>(cl));
}

Line fit_line_tls(const Point2* pts, int n) {
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += pts[i].x;
    my += pts[i].y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = pts[i].x - mx;
    const double dy = pts[i].y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  return Line{Point2{mx, my}, Vec2{std::cos(angle), std::sin(angle)}};
}

}  // namespace arcfit
