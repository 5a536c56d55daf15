#include "arcfit/biarc.hpp"

#include <cmath>
#include <vector>

#include "arcfit/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arcfit;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Config {
  Point2 ps, pe;
  Vec2 ts, te;
};

Config random_config(oracles::TestRng& rng) {
  Config c;
  c.ps = {rng.uniform(-20, 20), rng.uniform(-20, 20)};
  c.pe = {rng.uniform(-20, 20), rng.uniform(-20, 20)};
  if (distance(c.ps, c.pe) < 0.5) c.pe.x += 3.0;
  const double a = rng.uniform(0, 2 * kPi);
  const double b = rng.uniform(0, 2 * kPi);
  c.ts = {std::cos(a), std::sin(a)};
  c.te = {std::cos(b), std::sin(b)};
  return c;
}

/// Admissibility through the angle form: cos(t3) != 2 cos(t1) cos(t2) + 1.
bool admissible_by_angles(const Config& c) {
  const Vec2 v = c.pe - c.ps;
  const double nv = norm(v);
  if (nv <= 0.0) return false;
  const double cos1 = dot(v, c.ts) / nv;
  const double cos2 = dot(v, c.te) / nv;
  const double cos3 = dot(c.ts, c.te);
  if (std::abs(cos3 - 1.0) <= 1e-12) return false;
  const double rhs = 2.0 * cos1 * cos2 + 1.0;
  return std::abs(cos3 - rhs) > 1e-10 * std::max({std::abs(cos3), std::abs(rhs), 1.0});
}

}  // namespace

TEST_CASE("biarc admissibility") {
  const double s2 = std::sqrt(0.5);
  SUBCASE("worked configuration is admissible") {
    CHECK(biarc_admissible({0, 0}, {s2, s2}, {5, 1}, {0, -1}));
  }
  SUBCASE("aligned tangents are rejected") {
    CHECK_FALSE(biarc_admissible({0, 0}, {1, 0}, {3, 2}, {1, 0}));
  }
  SUBCASE("degenerate closure is rejected") {
    // v=(1,0), ts=(1,0), te=(-1,0): v.v = 1 equals 2(v.ts)(v.te)/(ts.te-1) = 1
    CHECK_FALSE(biarc_admissible({0, 0}, {1, 0}, {1, 0}, {-1, 0}));
  }
  SUBCASE("matches the angle form on random configurations") {
    oracles::TestRng rng(13);
    for (int it = 0; it < 10000; ++it) {
      const Config c = random_config(rng);
      CHECK(biarc_admissible(c.ps, c.ts, c.pe, c.te) == admissible_by_angles(c));
    }
  }
}

TEST_CASE("beta from alpha") {
  const Vec2 v{2, 0};
  const Vec2 ts{0, 1};
  const Vec2 te{0, -1};
  CHECK(beta_of_alpha(1.0, v, ts, te) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(beta_of_alpha(2.0, v, ts, te) == doctest::Approx(0.5).epsilon(1e-12));

  SUBCASE("closure identity on the worked configuration") {
    const double s2 = std::sqrt(0.5);
    const Point2 ps{0, 0}, pe{5, 1};
    const Vec2 tts{s2, s2}, tte{0, -1};
    const double alpha = 1.0;
    const double beta = beta_of_alpha(alpha, pe - ps, tts, tte);
    REQUIRE(beta > 0.0);
    const Point2 p1 = ps + alpha * tts;
    const Point2 p3 = pe - beta * tte;
    CHECK(distance(p3, p1) == doctest::Approx(alpha + beta).epsilon(1e-12));
  }
  SUBCASE("vanishing denominator throws") {
    // v=(1,0), ts=(1,0), te=(-1,0): denominator zero at alpha = 1/2
    CHECK_THROWS_AS(beta_of_alpha(0.5, Vec2{1, 0}, Vec2{1, 0}, Vec2{-1, 0}),
                    DenominatorZero);
  }
}

TEST_CASE("alpha selection") {
  SUBCASE("symmetric quarter-pair case") {
    const double alpha = choose_alpha({2, 0}, {0, 1}, {0, -1});
    CHECK(alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(beta_of_alpha(alpha, {2, 0}, {0, 1}, {0, -1}) == doctest::Approx(1.0));
  }
  SUBCASE("always yields positive beta on admissible configurations") {
    oracles::TestRng rng(29);
    int tested = 0;
    for (int it = 0; it < 20000 && tested < 5000; ++it) {
      const Config c = random_config(rng);
      if (!biarc_admissible(c.ps, c.ts, c.pe, c.te)) continue;
      ++tested;
      const Vec2 v = c.pe - c.ps;
      const double alpha = choose_alpha(v, c.ts, c.te);
      REQUIRE(alpha > 0.0);
      CHECK(beta_of_alpha(alpha, v, c.ts, c.te) > 0.0);
    }
    CHECK(tested == 5000);
  }
}

TEST_CASE("biarc construction") {
  SUBCASE("symmetric semicircle") {
    const Biarc b = build_biarc({-1, 0}, {0, 1}, {1, 0}, {0, -1}, 1.0);
    CHECK(distance(b.p1, {-1, 1}) < 1e-12);
    CHECK(distance(b.p3, {1, 1}) < 1e-12);
    CHECK(distance(b.p2, {0, 1}) < 1e-12);
    REQUIRE(b.first.kind == ArcSeg::Kind::arc);
    REQUIRE(b.second.kind == ArcSeg::Kind::arc);
    CHECK(distance(b.first.center, {0, 0}) < 1e-9);
    CHECK(distance(b.second.center, {0, 0}) < 1e-9);
    CHECK(b.first.radius == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.first.sweep() == doctest::Approx(kPi / 2).epsilon(1e-9));
    CHECK(b.second.sweep() == doctest::Approx(kPi / 2).epsilon(1e-9));
  }
  SUBCASE("worked configuration with automatic alpha") {
    const double s2 = std::sqrt(0.5);
    const Biarc b = build_biarc({0, 0}, {s2, s2}, {5, 1}, {0, -1});
    CHECK(b.first.sweep() < kPi);
    CHECK(b.second.sweep() < kPi);
    const Vec2 j1 = tangent_at(b.first, ArcEndpoint::end);
    const Vec2 j2 = tangent_at(b.second, ArcEndpoint::start);
    CHECK(dot(j1, j2) >= 1.0 - 1e-12);
  }
  SUBCASE("random admissible configurations satisfy every contract") {
    oracles::TestRng rng(31);
    int tested = 0;
    while (tested < 2000) {
      const Config c = random_config(rng);
      if (!biarc_admissible(c.ps, c.ts, c.pe, c.te)) continue;
      ++tested;
      const Biarc b = build_biarc(c.ps, c.ts, c.pe, c.te);
      CHECK(distance(b.p3, b.p1) == doctest::Approx(b.alpha + b.beta).epsilon(1e-9));
      CHECK(distance(b.first.start, c.ps) <= 1e-9);
      CHECK(distance(b.second.end, c.pe) <= 1e-9);
      CHECK(dot(tangent_at(b.first, ArcEndpoint::start), c.ts) >= 1.0 - 1e-12);
      CHECK(dot(tangent_at(b.second, ArcEndpoint::end), c.te) >= 1.0 - 1e-12);
      CHECK(dot(tangent_at(b.first, ArcEndpoint::end),
                tangent_at(b.second, ArcEndpoint::start)) >= 1.0 - 1e-12);
      if (b.first.kind == ArcSeg::Kind::arc) CHECK(b.first.sweep() < kPi);
      if (b.second.kind == ArcSeg::Kind::arc) CHECK(b.second.sweep() < kPi);
    }
  }
  SUBCASE("fixed ratio solves the closure quadratic") {
    oracles::TestRng rng(37);
    for (int it = 0; it < 500; ++it) {
      const Config c = random_config(rng);
      if (!biarc_admissible(c.ps, c.ts, c.pe, c.te)) continue;
      const double r = std::exp(rng.uniform(std::log(1.0 / 8.0), std::log(8.0)));
      const Biarc b = build_biarc(c.ps, c.ts, c.pe, c.te, std::nullopt, r);
      CHECK(b.alpha == doctest::Approx(r * b.beta).epsilon(1e-9));
      CHECK(b.alpha > 0.0);
      CHECK(b.beta > 0.0);
    }
  }
  SUBCASE("inadmissible input throws, chain construction still connects") {
    CHECK_THROWS_AS(build_biarc({0, 0}, {1, 0}, {3, 0}, {1, 0}), Inadmissible);
    const auto chain = biarc_chain({0, 0}, {1, 0}, {3, 0}, {1, 0});
    REQUIRE(chain.size() >= 2);
    CHECK(distance(chain.front().start, {0, 0}) < 1e-9);
    CHECK(distance(chain.back().end, {3, 0}) < 1e-9);
    for (std::size_t i = 1; i < chain.size(); ++i) {
      CHECK(same_point(chain[i - 1].end, chain[i].start));
      CHECK(dot(tangent_at(chain[i - 1], ArcEndpoint::end),
                tangent_at(chain[i], ArcEndpoint::start)) >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("rational Bezier arcs") {
  SUBCASE("quarter circle control triple") {
    const RationalArcBezier r = arc_to_bezier({1, 0}, {1, 1}, {0, 1});
    CHECK(r.theta == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(r.w1 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(r.radius == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(distance(r.center, {0, 0}) < 1e-9);
    const double s2 = std::sqrt(0.5);
    CHECK(distance(r.eval(0.5), {s2, s2}) < 1e-12);
    CHECK(distance(r.eval(0.0), {1, 0}) < 1e-15);
    CHECK(distance(r.eval(1.0), {0, 1}) < 1e-15);
  }
  SUBCASE("collinear controls throw") {
    CHECK_THROWS_AS(arc_to_bezier({0, 0}, {1, 0}, {2, 0}), CollinearControls);
  }
  SUBCASE("evaluation stays on the circle for random triples") {
    oracles::TestRng rng(41);
    for (int it = 0; it < 300; ++it) {
      // random isosceles control polygon = random arc with sweep < pi
      const Point2 c{rng.uniform(-10, 10), rng.uniform(-10, 10)};
      const double radius = rng.uniform(0.5, 15);
      const double a0 = rng.uniform(0, 2 * kPi);
      const double sweep = rng.uniform(0.05, kPi - 0.05);
      const ArcSeg arc = ArcSeg::make_arc(
          {c.x + radius * std::cos(a0), c.y + radius * std::sin(a0)},
          {c.x + radius * std::cos(a0 + sweep), c.y + radius * std::sin(a0 + sweep)}, c,
          Orientation::ccw);
      Point2 b0, b1, b2;
      control_of_arc(arc, b0, b1, b2);
      const RationalArcBezier r = arc_to_bezier(b0, b1, b2);
      double worst = 0.0;
      for (int i = 0; i <= 1000; ++i) {
        const Point2 p = r.eval(i / 1000.0);
        worst = std::max(worst, std::abs(distance(p, r.center) - r.radius));
      }
      CHECK(worst <= 1e-9);
      // the middle weight is the cosine of half the sweep
      CHECK(r.w1 == doctest::Approx(std::cos(0.5 * arc.sweep())).epsilon(1e-9));
    }
  }
}

TEST_CASE("piecewise curve evaluation") {
  SUBCASE("endpoint interpolation of a single arc") {
    PccCurve curve;
    curve.segs.push_back(ArcSeg::make_arc({1, 0}, {0, 1}, {0, 0}, Orientation::ccw));
    CHECK(distance(pcc_eval(curve, 0.0), {1, 0}) < 1e-12);
    CHECK(distance(pcc_eval(curve, 1.0), {0, 1}) < 1e-12);
  }
  SUBCASE("junction at integer parameter") {
    const Biarc b = build_biarc({-1, 0}, {0, 1}, {1, 0}, {0, -1}, 1.0);
    PccCurve curve;
    curve.segs.push_back(b.first);
    curve.segs.push_back(b.second);
    CHECK(distance(pcc_eval(curve, 1.0), {0, 1}) < 1e-12);
    CHECK(distance(pcc_eval(curve, 2.0), {1, 0}) < 1e-12);
  }
  SUBCASE("continuity at section boundaries of a random chain") {
    oracles::TestRng rng(47);
    PccCurve curve;
    Point2 cursor{0, 0};
    Vec2 dir{1, 0};
    for (int i = 0; i < 5; ++i) {
      const Point2 target{cursor.x + rng.uniform(1, 4), cursor.y + rng.uniform(-2, 2)};
      const Biarc b = build_biarc(cursor, dir, target,
                                  normalized({1.0, rng.uniform(-1, 1)}));
      curve.segs.push_back(b.first);
      curve.segs.push_back(b.second);
      cursor = target;
      dir = tangent_at(b.second, ArcEndpoint::end);
    }
    for (int j = 1; j < curve.size(); ++j) {
      const Point2 left = pcc_eval(curve, j - 1e-12);
      const Point2 right = pcc_eval(curve, j + 1e-12);
      CHECK(distance(left, right) <= 1e-9);
    }
    CHECK_THROWS_AS(pcc_eval(curve, -0.1), OutOfDomain);
    CHECK_THROWS_AS(pcc_eval(curve, curve.size() + 0.1), OutOfDomain);
  }
  SUBCASE("wide arcs evaluate on-circle") {
    PccCurve curve;
    const ArcSeg wide = ArcSeg::make_arc({1, 0}, {-1, 0}, {0, 0}, Orientation::ccw);
    curve.segs.push_back(ArcSeg::make_arc({1, 0}, {0, -1}, {0, 0}, Orientation::cw));
    curve.segs[0] = wide;
    for (int i = 0; i <= 100; ++i) {
      const Point2 p = pcc_eval(curve, i / 100.0);
      CHECK(std::abs(distance(p, {0, 0}) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("optimal-ratio biarc fitting") {
  // Points on a known biarc are reproduced by the ratio search.
  const Biarc truth = build_biarc({0, 0}, normalized({1, 1}), {6, 0}, normalized({1, -1}),
                                  std::nullopt, 2.0);
  std::vector<Point2> targets;
  for (int i = 1; i < 8; ++i) {
    targets.push_back(truth.first.point_at(i / 8.0));
    targets.push_back(truth.second.point_at(i / 8.0));
  }
  const Biarc fit = fit_biarc_ratio({0, 0}, normalized({1, 1}), {6, 0},
                                    normalized({1, -1}), targets);
  double worst = 0.0;
  for (const Point2& p : targets) worst = std::max(worst, fit.distance_to(p));
  CHECK(worst < 1e-6);
  CHECK(fit.alpha / fit.beta == doctest::Approx(2.0).epsilon(1e-4));
}
