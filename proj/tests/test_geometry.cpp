#include "arcfit/geometry.hpp"

#include <array>
#include <cmath>

#include "arcfit/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arcfit;

TEST_CASE("circle through three points") {
  SUBCASE("symmetric triple") {
    const auto c = circle_through_three({0, 0}, {1, 1}, {2, 0});
    REQUIRE(std::holds_alternative<Circle>(c));
    const Circle circle = std::get<Circle>(c);
    CHECK(circle.center.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(circle.center.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(circle.radius == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("collinear input degenerates to a line") {
    const auto c = circle_through_three({0, 0}, {1, 0}, {2, 0});
    REQUIRE(std::holds_alternative<Line>(c));
  }
  SUBCASE("right triangle") {
    const auto c = circle_through_three({0, 0}, {0, 2}, {2, 0});
    REQUIRE(std::holds_alternative<Circle>(c));
    const Circle circle = std::get<Circle>(c);
    CHECK(distance(circle.center, {1, 1}) < 1e-9);
    CHECK(circle.radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("duplicate points are rejected") {
    CHECK_THROWS_AS(circle_through_three({1, 2}, {1, 2}, {0, 0}), DuplicatePoints);
  }
  SUBCASE("permutation invariance") {
    oracles::TestRng rng(7);
    for (int it = 0; it < 50; ++it) {
      const Point2 a{rng.uniform(-50, 50), rng.uniform(-50, 50)};
      const Point2 b{rng.uniform(-50, 50), rng.uniform(-50, 50)};
      const Point2 c{rng.uniform(-50, 50), rng.uniform(-50, 50)};
      const auto base = circle_through_three(a, b, c);
      if (!std::holds_alternative<Circle>(base)) continue;
      const Circle ref = std::get<Circle>(base);
      const std::array<std::array<Point2, 3>, 5> perms = {{
          {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}, {a, c, b}}};
      for (const auto& p : perms) {
        const auto other = circle_through_three(p[0], p[1], p[2]);
        REQUIRE(std::holds_alternative<Circle>(other));
        const Circle oc = std::get<Circle>(other);
        CHECK(distance(oc.center, ref.center) < 1e-9 * std::max(1.0, ref.radius));
        CHECK(std::abs(oc.radius - ref.radius) < 1e-9 * std::max(1.0, ref.radius));
      }
    }
  }
  SUBCASE("every returned circle interpolates its inputs") {
    oracles::TestRng rng(11);
    for (int it = 0; it < 50; ++it) {
      const Point2 a{rng.uniform(-50, 50), rng.uniform(-50, 50)};
      const Point2 b{rng.uniform(-50, 50), rng.uniform(-50, 50)};
      const Point2 c{rng.uniform(-50, 50), rng.uniform(-50, 50)};
      const auto fit = circle_through_three(a, b, c);
      for (const Point2& p : {a, b, c}) {
        CHECK(residual(p, fit) < 1e-9 * 100.0);
      }
    }
  }
}

TEST_CASE("circle-circle intersection") {
  SUBCASE("two crossing unit circles") {
    const auto hits = circle_circle_intersection({{0, 0}, 1.0}, {{1, 0}, 1.0});
    REQUIRE(hits.count == 2);
    const double s3 = std::sqrt(3.0) / 2.0;
    const bool ordered = std::abs(hits.pts[0].y - s3) < 1e-12;
    const Point2 hi = ordered ? hits.pts[0] : hits.pts[1];
    const Point2 lo = ordered ? hits.pts[1] : hits.pts[0];
    CHECK(distance(hi, {0.5, s3}) < 1e-12);
    CHECK(distance(lo, {0.5, -s3}) < 1e-12);
  }
  SUBCASE("externally tangent") {
    const auto hits = circle_circle_intersection({{0, 0}, 1.0}, {{2, 0}, 1.0});
    REQUIRE(hits.count == 1);
    CHECK(distance(hits.pts[0], {1, 0}) < 1e-9);
  }
  SUBCASE("concentric circles never intersect") {
    CHECK(circle_circle_intersection({{0, 0}, 1.0}, {{0, 0}, 2.0}).count == 0);
  }
  SUBCASE("points lie on both circles; swap is symmetric") {
    oracles::TestRng rng(3);
    for (int it = 0; it < 60; ++it) {
      const Circle c1{{rng.uniform(-10, 10), rng.uniform(-10, 10)}, rng.uniform(0.5, 8)};
      const Circle c2{{rng.uniform(-10, 10), rng.uniform(-10, 10)}, rng.uniform(0.5, 8)};
      const auto a = circle_circle_intersection(c1, c2);
      const auto b = circle_circle_intersection(c2, c1);
      REQUIRE(a.count == b.count);
      for (int i = 0; i < a.count; ++i) {
        CHECK(radial_residual(a.pts[i], c1) < 1e-9);
        CHECK(radial_residual(a.pts[i], c2) < 1e-9);
        const double d0 = distance(a.pts[i], b.pts[0]);
        const double d1 = b.count > 1 ? distance(a.pts[i], b.pts[1]) : d0;
        CHECK(std::min(d0, d1) < 1e-9);
      }
    }
  }
}

TEST_CASE("radial residual") {
  CHECK(radial_residual({2, 0}, {{0, 0}, 1.0}) == doctest::Approx(1.0));
  CHECK(radial_residual({std::cos(1.1), std::sin(1.1)}, {{0, 0}, 1.0}) < 1e-15);
  CHECK(radial_residual({3, 4}, {{0, 0}, 2.0}) == doctest::Approx(3.0));

  // zero residual iff the point is on the circle
  oracles::TestRng rng(5);
  for (int it = 0; it < 50; ++it) {
    const Circle c{{rng.uniform(-10, 10), rng.uniform(-10, 10)}, rng.uniform(0.5, 9)};
    const double ang = rng.uniform(0, 6.28);
    const Point2 on{c.center.x + c.radius * std::cos(ang),
                    c.center.y + c.radius * std::sin(ang)};
    CHECK(radial_residual(on, c) < 1e-9);
    const Point2 off{on.x + 0.01 * std::cos(ang), on.y + 0.01 * std::sin(ang)};
    CHECK(radial_residual(off, c) > 1e-9);
  }
}

TEST_CASE("endpoint tangents") {
  const ArcSeg quarter = ArcSeg::make_arc({1, 0}, {0, 1}, {0, 0}, Orientation::ccw);
  CHECK(norm(tangent_at(quarter, ArcEndpoint::start) - Vec2{0, 1}) < 1e-12);
  CHECK(norm(tangent_at(quarter, ArcEndpoint::end) - Vec2{-1, 0}) < 1e-12);

  const ArcSeg seg = ArcSeg::make_segment({0, 0}, {2, 0});
  CHECK(norm(tangent_at(seg, ArcEndpoint::start) - Vec2{1, 0}) < 1e-12);
  CHECK(norm(tangent_at(seg, ArcEndpoint::end) - Vec2{1, 0}) < 1e-12);

  // tangent is unit and perpendicular to the radius for random arcs
  oracles::TestRng rng(9);
  for (int it = 0; it < 50; ++it) {
    const Point2 c{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const double r = rng.uniform(0.5, 9);
    const double a0 = rng.uniform(0, 6.28);
    const double a1 = a0 + rng.uniform(0.2, 3.0);
    const Point2 s{c.x + r * std::cos(a0), c.y + r * std::sin(a0)};
    const Point2 e{c.x + r * std::cos(a1), c.y + r * std::sin(a1)};
    const ArcSeg arc = ArcSeg::make_arc(
        s, e, c, rng.uniform(0, 1) < 0.5 ? Orientation::ccw : Orientation::cw);
    const Vec2 t = tangent_at(arc, ArcEndpoint::start);
    CHECK(std::abs(norm(t) - 1.0) < 1e-12);
    CHECK(std::abs(dot(t, s - c)) < 1e-12 * r);
  }
}

TEST_CASE("arc sweep, containment and distance") {
  const ArcSeg quarter = ArcSeg::make_arc({1, 0}, {0, 1}, {0, 0}, Orientation::ccw);
  CHECK(quarter.sweep() == doctest::Approx(3.14159265358979 / 2).epsilon(1e-12));
  CHECK(quarter.length() == doctest::Approx(3.14159265358979 / 2).epsilon(1e-12));
  const double s2 = std::sqrt(0.5);
  CHECK(distance(quarter.point_at(0.5), {s2, s2}) < 1e-12);
  CHECK(quarter.angle_contains({s2, s2}));
  CHECK_FALSE(quarter.angle_contains({s2, -s2}));
  CHECK(quarter.distance_to({2 * s2, 2 * s2}) == doctest::Approx(1.0));
  // outside the sweep: clamps to the nearer endpoint
  CHECK(quarter.distance_to({0, -1}) == doctest::Approx(std::sqrt(2.0)));

  const ArcSeg cw = ArcSeg::make_arc({1, 0}, {0, 1}, {0, 0}, Orientation::cw);
  CHECK(cw.sweep() == doctest::Approx(3.0 * 3.14159265358979 / 2).epsilon(1e-12));
  CHECK(cw.angle_contains({0, -1}));
}
