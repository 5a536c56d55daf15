#include "arcfit/scan_synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcfit/errors.hpp"

namespace arcfit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// j-th value of the splitmix64 counter stream for this seed.
std::uint64_t stream_value(std::uint64_t seed, std::uint64_t j) {
  return splitmix64(splitmix64(seed) + j * 0x9e3779b97f4a7c15ULL);
}

double to_unit(std::uint64_t x) {
  // 53-bit mantissa in (0, 1]; never zero so log is safe.
  return (static_cast<double>(x >> 11) + 1.0) * (1.0 / 9007199254740992.0);
}

/// Standard normal pair for sample index idx (Box-Muller).
void gauss_pair(std::uint64_t seed, std::uint64_t idx, double* g0, double* g1) {
  const double u1 = to_unit(stream_value(seed, 2 * idx));
  const double u2 = to_unit(stream_value(seed, 2 * idx + 1));
  const double r = std::sqrt(-2.0 * std::log(u1));
  *g0 = r * std::cos(kTwoPi * u2);
  *g1 = r * std::sin(kTwoPi * u2);
}

std::vector<double> cumulative_lengths(const std::vector<ArcSeg>& pieces) {
  std::vector<double> cum(pieces.size() + 1, 0.0);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    cum[i + 1] = cum[i] + pieces[i].length();
  }
  return cum;
}

}  // namespace

double ShapeSpec::length() const {
  double total = 0.0;
  for (const ArcSeg& p : pieces) total += p.length();
  return total;
}

std::vector<Point2> ShapeSpec::vertices() const {
  std::vector<Point2> out;
  const std::size_t n = pieces.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vec2 a = tangent_at(pieces[i], ArcEndpoint::end);
    const Vec2 b = tangent_at(pieces[i + 1], ArcEndpoint::start);
    if (dot(a, b) < 1.0 - 1e-9) out.push_back(pieces[i + 1].start);
  }
  if (closed && n >= 2) {
    const Vec2 a = tangent_at(pieces[n - 1], ArcEndpoint::end);
    const Vec2 b = tangent_at(pieces[0], ArcEndpoint::start);
    if (dot(a, b) < 1.0 - 1e-9) out.push_back(pieces[0].start);
  }
  return out;
}

std::vector<double> ShapeSpec::vertex_arclengths() const {
  std::vector<double> out;
  const std::vector<double> cum = cumulative_lengths(pieces);
  const std::size_t n = pieces.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vec2 a = tangent_at(pieces[i], ArcEndpoint::end);
    const Vec2 b = tangent_at(pieces[i + 1], ArcEndpoint::start);
    if (dot(a, b) < 1.0 - 1e-9) out.push_back(cum[i + 1]);
  }
  if (closed && n >= 2) {
    const Vec2 a = tangent_at(pieces[n - 1], ArcEndpoint::end);
    const Vec2 b = tangent_at(pieces[0], ArcEndpoint::start);
    if (dot(a, b) < 1.0 - 1e-9) out.push_back(0.0);
  }
  return out;
}

Point2 ShapeSpec::point_at_arclength(double s) const {
  const std::vector<double> cum = cumulative_lengths(pieces);
  const double total = cum.back();
  s = std::clamp(s, 0.0, total);
  std::size_t i = 0;
  while (i + 1 < pieces.size() && s > cum[i + 1]) ++i;
  const double len = pieces[i].length();
  const double u = len > 0.0 ? (s - cum[i]) / len : 0.0;
  return pieces[i].point_at(std::clamp(u, 0.0, 1.0));
}

Vec2 ShapeSpec::tangent_at_arclength(double s) const {
  const std::vector<double> cum = cumulative_lengths(pieces);
  const double total = cum.back();
  s = std::clamp(s, 0.0, total);
  std::size_t i = 0;
  while (i + 1 < pieces.size() && s > cum[i + 1]) ++i;
  const double len = pieces[i].length();
  const double u = len > 0.0 ? (s - cum[i]) / len : 0.0;
  return tangent_on(pieces[i], pieces[i].point_at(std::clamp(u, 0.0, 1.0)));
}

ScanResult generate_scan(const ShapeSpec& shape, const ScanConfig& config) {
  if (shape.pieces.empty()) throw DegenerateInput("generate_scan: empty shape");
  if (config.step <= 0.0) throw DegenerateInput("generate_scan: step must be positive");

  const std::vector<double> cum = cumulative_lengths(shape.pieces);
  const double total = cum.back();
  const std::vector<double> vertex_s = shape.vertex_arclengths();

  auto vertex_distance = [&](double s) {
    double best = std::numeric_limits<double>::infinity();
    for (double v : vertex_s) {
      double d = std::abs(s - v);
      if (shape.closed) d = std::min(d, total - d);
      best = std::min(best, d);
    }
    return best;
  };

  ScanResult result;
  result.truth.vertices = shape.vertices();
  result.truth.pieces = shape.pieces;

  std::vector<int> per_piece(shape.pieces.size(), 0);
  const double end_slack = 1e-9 * std::max(1.0, total);
  for (std::uint64_t j = 0;; ++j) {
    const double s = config.step * static_cast<double>(j);
    if (shape.closed) {
      if (s >= total - end_slack) break;  // the seam point belongs to s = 0
    } else {
      if (s > total + end_slack) break;
    }
    if (vertex_distance(s) < config.corner_exclusion) continue;

    std::size_t piece = 0;
    while (piece + 1 < shape.pieces.size() && s > cum[piece + 1]) ++piece;
    ++per_piece[piece];

    Point2 p = shape.point_at_arclength(std::min(s, total));
    if (config.jitter_sigma > 0.0) {
      double g0, g1;
      gauss_pair(config.seed, j, &g0, &g1);
      if (config.isotropic_jitter) {
        p.x += config.jitter_sigma * g0;
        p.y += config.jitter_sigma * g1;
      } else {
        const Vec2 n = perp(shape.tangent_at_arclength(std::min(s, total)));
        p = p + (config.jitter_sigma * g0) * n;
      }
    }
    result.points.push_back(p);
  }

  for (std::size_t i = 0; i < per_piece.size(); ++i) {
    if (per_piece[i] < 3) {
      throw StepTooLarge("generate_scan: a contour piece yields fewer than 3 samples");
    }
  }
  return result;
}

ShapeSpec regular_polygon(int sides, double side_length, Point2 center) {
  if (sides < 3) throw DegenerateInput("regular_polygon: needs at least 3 sides");
  const double circumradius = side_length / (2.0 * std::sin(3.14159265358979323846 / sides));
  std::vector<Point2> verts;
  verts.reserve(static_cast<std::size_t>(sides));
  for (int i = 0; i < sides; ++i) {
    const double a = 0.5 * 3.14159265358979323846 + kTwoPi * i / sides;
    verts.push_back({center.x + circumradius * std::cos(a),
                     center.y + circumradius * std::sin(a)});
  }
  ShapeSpec shape;
  shape.closed = true;
  for (int i = 0; i < sides; ++i) {
    shape.pieces.push_back(
        ArcSeg::make_segment(verts[static_cast<std::size_t>(i)],
                             verts[static_cast<std::size_t>((i + 1) % sides)]));
  }
  return shape;
}

}  // namespace arcfit
