#include "arcfit/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "arcfit/biarc.hpp"
#include "arcfit/errors.hpp"

namespace arcfit {

namespace {

ArcSeg trim_end(const ArcSeg& seg, Point2 q) {
  if (seg.kind == ArcSeg::Kind::segment) {
    ArcSeg out = ArcSeg::make_segment(seg.start, q);
    out.src_first = seg.src_first;
    out.src_last = seg.src_last;
    return out;
  }
  ArcSeg out = ArcSeg::make_arc(seg.start, q, seg.center, seg.orient);
  out.src_first = seg.src_first;
  out.src_last = seg.src_last;
  return out;
}

ArcSeg trim_start(const ArcSeg& seg, Point2 q) {
  if (seg.kind == ArcSeg::Kind::segment) {
    ArcSeg out = ArcSeg::make_segment(q, seg.end);
    out.src_first = seg.src_first;
    out.src_last = seg.src_last;
    return out;
  }
  ArcSeg out = ArcSeg::make_arc(q, seg.end, seg.center, seg.orient);
  out.src_first = seg.src_first;
  out.src_last = seg.src_last;
  return out;
}

/// Point on the piece at chord distance delta from the junction endpoint
/// (the end for from_end, else the start). Empty when the piece is shorter
/// than delta.
std::optional<Point2> point_at_chord_distance(const ArcSeg& seg, bool from_end,
                                              double delta) {
  const Point2 anchor = from_end ? seg.end : seg.start;
  const Point2 other = from_end ? seg.start : seg.end;
  if (seg.kind == ArcSeg::Kind::segment) {
    const double len = distance(seg.start, seg.end);
    if (delta >= len) return std::nullopt;
    const Vec2 dir = normalized(other - anchor);
    return anchor + delta * dir;
  }
  const Intersections hits =
      circle_circle_intersection(Circle{seg.center, seg.radius}, Circle{anchor, delta});
  std::optional<Point2> best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < hits.count; ++i) {
    const Point2 q = hits.pts[i];
    if (!seg.angle_contains(q)) continue;
    if (same_point(q, other, 1e-12)) continue;  // would consume the whole piece
    // Of the (up to two) symmetric candidates, keep the one reachable from
    // the anchor without crossing the other endpoint.
    const double gap = distance(q, anchor);
    if (gap < best_gap) {
      best_gap = gap;
      best = q;
    }
  }
  return best;
}

struct FilletResult {
  PccCurve curve;
  double deviation = 0.0;  // distance from the old corner to the fillet
};

FilletResult build_fillet(const PccCurve& curve, int k, double rho) {
  const ArcSeg& prev = curve.segs[static_cast<std::size_t>(k - 1)];
  const ArcSeg& next = curve.segs[static_cast<std::size_t>(k)];
  const Point2 j = next.start;

  const Vec2 back = -tangent_at(prev, ArcEndpoint::end);
  const Vec2 forward = tangent_at(next, ArcEndpoint::start);
  Vec2 wedge = back + forward;
  if (norm(wedge) < 1e-9) throw NoFilletExists("fillet: degenerate corner wedge");
  wedge = normalized(wedge);

  // Candidate offset loci of one neighbor at distance rho.
  auto offsets_of = [&](const ArcSeg& seg) -> std::vector<CircleOrLine> {
    std::vector<CircleOrLine> out;
    if (seg.kind == ArcSeg::Kind::segment) {
      const Vec2 dir = normalized(seg.end - seg.start);
      Vec2 n = perp(dir);
      if (dot(n, wedge) < 0.0) n = -n;
      out.push_back(Line{seg.start + rho * n, dir});
    } else {
      if (seg.radius + rho > 0.0) out.push_back(Circle{seg.center, seg.radius + rho});
      if (seg.radius - rho > 0.0) out.push_back(Circle{seg.center, seg.radius - rho});
    }
    return out;
  };

  auto tangency_on = [&](const ArcSeg& seg, Point2 center) -> std::optional<Point2> {
    if (seg.kind == ArcSeg::Kind::segment) {
      const Vec2 dir = normalized(seg.end - seg.start);
      const double t = dot(center - seg.start, dir);
      const double len = distance(seg.start, seg.end);
      if (t <= 1e-9 || t >= len - 1e-9) return std::nullopt;
      return seg.start + t * dir;
    }
    const Point2 q = seg.center + seg.radius * normalized(center - seg.center);
    if (!seg.angle_contains(q)) return std::nullopt;
    if (same_point(q, seg.start, 1e-9) || same_point(q, seg.end, 1e-9)) return std::nullopt;
    return q;
  };

  struct Candidate {
    Point2 center;
    Point2 t_prev;
    Point2 t_next;
  };
  std::optional<Candidate> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const CircleOrLine& oa : offsets_of(prev)) {
    for (const CircleOrLine& ob : offsets_of(next)) {
      const Intersections hits = intersect(oa, ob);
      for (int i = 0; i < hits.count; ++i) {
        const Point2 center = hits.pts[i];
        if (dot(center - j, wedge) <= 0.0) continue;  // outside the corner wedge
        const auto tp = tangency_on(prev, center);
        const auto tn = tangency_on(next, center);
        if (!tp || !tn) continue;
        const double d = distance(center, j);
        if (d < best_dist) {
          best_dist = d;
          best = Candidate{center, *tp, *tn};
        }
      }
    }
  }
  if (!best) throw NoFilletExists("fillet: offsets do not intersect inside the wedge");

  ArcSeg fillet = ArcSeg::make_arc(best->t_prev, best->t_next, best->center,
                                   Orientation::ccw);
  const Vec2 travel = tangent_on(prev, best->t_prev);
  if (dot(tangent_at(fillet, ArcEndpoint::start), travel) < 0.0) {
    fillet.orient = Orientation::cw;
  }

  FilletResult result;
  result.deviation = fillet.distance_to(j);
  result.curve.segs.reserve(curve.segs.size() + 1);
  for (int idx = 0; idx < curve.size(); ++idx) {
    if (idx == k - 1) {
      result.curve.segs.push_back(trim_end(prev, best->t_prev));
      result.curve.segs.push_back(fillet);
    } else if (idx == k) {
      result.curve.segs.push_back(trim_start(next, best->t_next));
    } else {
      result.curve.segs.push_back(curve.segs[static_cast<std::size_t>(idx)]);
    }
  }
  return result;
}

}  // namespace

JunctionReport classify_junction(Vec2 t_prev_end, Vec2 t_next_start, double eps_good) {
  JunctionReport rep;
  rep.cos_angle = dot(t_prev_end, t_next_start);
  rep.bad = rep.cos_angle < eps_good;
  return rep;
}

PccCurve smooth_with_biarc(const PccCurve& curve, int k, double delta, double epsilon) {
  if (k < 1 || k >= curve.size()) throw OutOfDomain("smooth_with_biarc: bad junction index");
  const ArcSeg& prev = curve.segs[static_cast<std::size_t>(k - 1)];
  const ArcSeg& next = curve.segs[static_cast<std::size_t>(k)];
  const Point2 j = next.start;

  const auto q_prev = point_at_chord_distance(prev, true, delta);
  const auto q_next = point_at_chord_distance(next, false, delta);
  if (!q_prev || !q_next) throw NeighborTooShort("smooth_with_biarc: delta exceeds a neighbor");

  const Vec2 ts = tangent_on(prev, *q_prev);
  const Vec2 te = tangent_on(next, *q_next);

  std::vector<ArcSeg> inserted;
  try {
    const Biarc bi = build_biarc(*q_prev, ts, *q_next, te);
    inserted = {bi.first, bi.second};
  } catch (const Error&) {
    inserted = biarc_chain(*q_prev, ts, *q_next, te);
  }

  double deviation = std::numeric_limits<double>::infinity();
  for (const ArcSeg& seg : inserted) deviation = std::min(deviation, seg.distance_to(j));
  if (deviation > epsilon) throw DeltaTooLarge("smooth_with_biarc: corner deviation exceeds tolerance");
  if (deviation < 1e-6) throw DeltaTooSmall("smooth_with_biarc: biarc reproduces the corner");

  PccCurve out;
  out.segs.reserve(curve.segs.size() + inserted.size());
  for (int idx = 0; idx < curve.size(); ++idx) {
    if (idx == k - 1) {
      out.segs.push_back(trim_end(prev, *q_prev));
      for (const ArcSeg& seg : inserted) out.segs.push_back(seg);
    } else if (idx == k) {
      out.segs.push_back(trim_start(next, *q_next));
    } else {
      out.segs.push_back(curve.segs[static_cast<std::size_t>(idx)]);
    }
  }
  return out;
}

PccCurve smooth_with_fillet(const PccCurve& curve, int k, double rho) {
  if (k < 1 || k >= curve.size()) throw OutOfDomain("smooth_with_fillet: bad junction index");
  if (rho <= 0.0) throw NoFilletExists("smooth_with_fillet: radius must be positive");
  return build_fillet(curve, k, rho).curve;
}

SmoothOutcome smooth_curve(const PccCurve& curve, const SmoothConfig& config) {
  SmoothOutcome out;
  out.curve = curve;
  int j = 1;
  while (j < out.curve.size()) {
    const ArcSeg& prev = out.curve.segs[static_cast<std::size_t>(j - 1)];
    const ArcSeg& next = out.curve.segs[static_cast<std::size_t>(j)];
    JunctionReport rep =
        classify_junction(tangent_at(prev, ArcEndpoint::end),
                          tangent_at(next, ArcEndpoint::start), config.eps_good);
    rep.index = j;

    if (rep.bad && config.mode == SmoothConfig::Mode::biarc) {
      const double dmax =
          0.5 * std::min(prev.length(), next.length());
      const double floor = std::min(4.0 * config.epsilon, dmax);
      double delta = config.delta > 0.0 ? config.delta : 2.0 * config.spacing_hint;
      delta = std::clamp(delta, std::min(floor, dmax), dmax);
      rep.fix = JunctionReport::Fix::unfixable;
      for (int attempt = 0; attempt < 8 && delta >= floor * 0.999; ++attempt) {
        try {
          out.curve = smooth_with_biarc(out.curve, j, delta, config.epsilon);
          rep.fix = JunctionReport::Fix::biarc;
          break;
        } catch (const DeltaTooLarge&) {
          delta *= 0.5;  // cut less of the corner
        } catch (const NeighborTooShort&) {
          delta *= 0.5;
        } catch (const Error&) {
          break;
        }
      }
    } else if (rep.bad && config.mode == SmoothConfig::Mode::fillet) {
      rep.fix = JunctionReport::Fix::unfixable;
      if (config.rho > 0.0) {
        try {
          const FilletResult r = build_fillet(out.curve, j, config.rho);
          if (r.deviation <= config.epsilon) {
            out.curve = r.curve;
            rep.fix = JunctionReport::Fix::fillet;
          }
        } catch (const Error&) {
        }
      } else {
        // Largest radius whose corner deviation stays within the tolerance.
        const double hi_cap = std::max(
            {out.curve.segs[static_cast<std::size_t>(j - 1)].length(),
             out.curve.segs[static_cast<std::size_t>(j)].length(), 16.0 * config.epsilon});
        double lo = 0.0, hi = hi_cap, best = -1.0;
        for (int it = 0; it < 40; ++it) {
          const double mid = lo + 0.5 * (hi - lo);
          bool ok = false;
          try {
            ok = build_fillet(out.curve, j, mid).deviation <= config.epsilon;
          } catch (const Error&) {
            ok = false;
          }
          if (ok) {
            best = mid;
            lo = mid;
          } else {
            hi = mid;
          }
        }
        if (best > 0.0) {
          try {
            out.curve = build_fillet(out.curve, j, best).curve;
            rep.fix = JunctionReport::Fix::fillet;
          } catch (const Error&) {
          }
        }
      }
    }

    if (rep.fix == JunctionReport::Fix::biarc || rep.fix == JunctionReport::Fix::fillet) {
      // Verify the replacement join; a fix that does not classify good is
      // downgraded instead of looping.
      const ArcSeg& np = out.curve.segs[static_cast<std::size_t>(j - 1)];
      const ArcSeg& nn = out.curve.segs[static_cast<std::size_t>(j)];
      const JunctionReport check =
          classify_junction(tangent_at(np, ArcEndpoint::end),
                            tangent_at(nn, ArcEndpoint::start), config.eps_good);
      if (check.bad) rep.fix = JunctionReport::Fix::unfixable;
    }
    out.junctions.push_back(rep);
    ++j;
  }
  return out;
}

}  // namespace arcfit
