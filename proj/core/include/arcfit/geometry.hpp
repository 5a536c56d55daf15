#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

namespace arcfit {

/// Tolerance for C0 endpoint chaining and on-circle checks, in mm.
inline constexpr double kChainTol = 1e-9;
/// Tolerance for unit-vector and parallelism checks.
inline constexpr double kUnitTol = 1e-12;
/// Circles with radius beyond this behave as straight lines, in mm.
inline constexpr double kDegenerateRadius = 1e7;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
inline Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }

inline Vec2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(Point2 p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }
inline Point2 operator-(Point2 p, Vec2 v) { return {p.x - v.x, p.y - v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }
/// +90 degree (counterclockwise) rotation.
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
inline Vec2 normalized(Vec2 v) {
  const double n = norm(v);
  return {v.x / n, v.y / n};
}

inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 midpoint(Point2 a, Point2 b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}
inline bool same_point(Point2 a, Point2 b, double tol = kChainTol) {
  return distance(a, b) <= tol;
}

struct Circle {
  Point2 center{};
  double radius = 0.0;
};

/// Infinite line through `point` with unit direction `dir`.
struct Line {
  Point2 point{};
  Vec2 dir{};
};

using CircleOrLine = std::variant<Circle, Line>;

enum class Orientation : std::uint8_t { ccw, cw };

inline Orientation opposite(Orientation o) {
  return o == Orientation::ccw ? Orientation::cw : Orientation::ccw;
}

/// One piece of a piecewise-circular curve: a circular arc or a straight
/// segment. Arcs are stored by endpoints, center and orientation; the sweep
/// angle is derived, so chaining two pieces is an exact endpoint test.
struct ArcSeg {
  enum class Kind : std::uint8_t { segment, arc };

  Kind kind = Kind::segment;
  Point2 start{};
  Point2 end{};
  Point2 center{};                        // arc only
  double radius = 0.0;                    // arc only
  Orientation orient = Orientation::ccw;  // arc only

  // 1-based span of source data points this piece covers (0 = unset).
  int src_first = 0;
  int src_last = 0;

  static ArcSeg make_segment(Point2 a, Point2 b);
  static ArcSeg make_arc(Point2 start, Point2 end, Point2 center, Orientation o);
  /// Arc through `via`: picks the orientation whose traversal from start to
  /// end passes through the given point.
  static ArcSeg arc_through_via(Point2 start, Point2 end, Point2 center, Point2 via);

  bool is_arc() const { return kind == Kind::arc; }
  /// Sweep angle in (0, 2*pi]; 0 for segments.
  double sweep() const;
  double length() const;
  /// Point at normalized parameter u in [0,1] (uniform in arc length).
  Point2 point_at(double u) const;
  Vec2 start_tangent() const;
  Vec2 end_tangent() const;
  /// Minimum distance from p to this piece.
  double distance_to(Point2 p) const;
  /// True if the angular position of p (projected on the circle) lies within
  /// the traversed sweep. Arcs only.
  bool angle_contains(Point2 p) const;
};

/// Ordered chain of arcs/segments.
struct PccCurve {
  std::vector<ArcSeg> segs;

  bool empty() const { return segs.empty(); }
  int size() const { return static_cast<int>(segs.size()); }
  /// C0-chained: every piece starts where the previous one ends.
  bool is_chained(double tol = kChainTol) const;
  double distance_to(Point2 p) const;
  double length() const;
};

enum class ArcEndpoint : std::uint8_t { start, end };

/// Unit tangent at an endpoint, oriented along the traversal direction.
Vec2 tangent_at(const ArcSeg& seg, ArcEndpoint which);

/// Unit tangent at an arbitrary point of the piece (assumed on it), oriented
/// along the traversal direction.
Vec2 tangent_on(const ArcSeg& seg, Point2 p);

/// Circumscribed circle of three pairwise-distinct points. Returns the line
/// through them when the circumradius would exceed `radius_cap`.
/// Throws DuplicatePoints when two inputs coincide.
CircleOrLine circle_through_three(Point2 a, Point2 b, Point2 c,
                                  double radius_cap = kDegenerateRadius);

/// Intersection points of two geometric loci; count is 0, 1 or 2.
struct Intersections {
  int count = 0;
  std::array<Point2, 2> pts{};
};

Intersections circle_circle_intersection(const Circle& c1, const Circle& c2);
Intersections circle_line_intersection(const Circle& c, const Line& l);
Intersections line_line_intersection(const Line& a, const Line& b);
Intersections intersect(const CircleOrLine& a, const CircleOrLine& b);

/// Radial distance |R - ||p - center|||.
double radial_residual(Point2 p, const Circle& c);
/// Perpendicular distance from p to the line.
double line_residual(Point2 p, const Line& l);
/// Residual against either locus.
double residual(Point2 p, const CircleOrLine& cl);

/// Total least squares line through a point set (principal direction of the
/// centered covariance). Requires >= 2 distinct points.
Line fit_line_tls(const Point2* pts, int n);

}  // namespace arcfit
