#pragma once

#include <optional>
#include <span>
#include <vector>

#include "arcfit/geometry.hpp"

namespace arcfit {

/// G1 pair of circular arcs interpolating two endpoints with prescribed unit
/// tangents. Control polygon: ps, p1, p2, p3, pe with p1 = ps + alpha*ts,
/// p3 = pe - beta*te and junction p2 splitting p1->p3 by beta:alpha.
struct Biarc {
  Point2 ps{}, p1{}, p2{}, p3{}, pe{};
  double alpha = 0.0;
  double beta = 0.0;
  ArcSeg first;   // ps -> p2, may degenerate to a segment
  ArcSeg second;  // p2 -> pe

  double distance_to(Point2 p) const {
    return std::min(first.distance_to(p), second.distance_to(p));
  }
};

/// True when a single biarc exists for the configuration: the tangents are
/// not both aligned with each other (ts.te != 1) and the closure quadratic is
/// nondegenerate.
bool biarc_admissible(Point2 ps, Vec2 ts, Point2 pe, Vec2 te);

/// Tangent-leg length beta for a given alpha from the closure condition
/// ||p3 - p1|| = alpha + beta. Signed; negative means infeasible alpha.
/// Throws DenominatorZero when the closure denominator vanishes.
double beta_of_alpha(double alpha, Vec2 v, Vec2 ts, Vec2 te);

/// A positive alpha guaranteed to give beta > 0, by the case analysis on
/// K = (v.ts)/(ts.te - 1). Throws Inadmissible.
double choose_alpha(Vec2 v, Vec2 ts, Vec2 te);

/// Builds the biarc. With neither alpha nor ratio given, alpha comes from
/// choose_alpha. With ratio r, alpha = r*beta is solved jointly with the
/// closure condition (unique positive root). Throws Inadmissible/NegativeBeta.
Biarc build_biarc(Point2 ps, Vec2 ts, Point2 pe, Vec2 te,
                  std::optional<double> alpha = std::nullopt,
                  std::optional<double> ratio = std::nullopt);

/// Biarc as a piece chain; inadmissible configurations are solved with two
/// consecutive biarcs through an inserted midpoint. Throws GapUnfillable when
/// even the split construction fails.
std::vector<ArcSeg> biarc_chain(Point2 ps, Vec2 ts, Point2 pe, Vec2 te);

/// Optimal-ratio biarc: golden search on the ratio r in [1/8, 8] minimizing
/// the max distance of the target points to the biarc.
Biarc fit_biarc_ratio(Point2 ps, Vec2 ts, Point2 pe, Vec2 te,
                      std::span<const Point2> targets);

/// Rational quadratic Bezier form of a circular arc: weights {1, cos(theta), 1}
/// with theta the half sweep angle in [0, pi/2).
struct RationalArcBezier {
  Point2 p0{}, p1{}, p2{};
  double w1 = 1.0;   // cos(theta)
  double theta = 0.0;
  Point2 center{};
  double radius = 0.0;

  Point2 eval(double t) const;
};

/// Bezier arc from its control triple (apex b1 at the tangent intersection).
/// The control polygon must be isosceles (|b1-b0| = |b2-b1|), which every arc
/// control polygon is; validated through the center identity at construction.
/// Throws CollinearControls for flat triples.
RationalArcBezier arc_to_bezier(Point2 b0, Point2 b1, Point2 b2);

/// Control triple of an arc piece with sweep < pi.
void control_of_arc(const ArcSeg& arc, Point2& b0, Point2& b1, Point2& b2);

/// Piecewise rational-Bezier evaluation of a chained curve. Piece i covers
/// parameter [i, i+1); t = n returns the final endpoint. Arcs with sweep >= pi
/// are evaluated on two half-sweep Bezier pieces. Throws OutOfDomain.
Point2 pcc_eval(const PccCurve& curve, double t);

}  // namespace arcfit
