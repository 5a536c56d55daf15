#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "arcfit/geometry.hpp"
#include "arcfit/scan_synth.hpp"

namespace arcfit {

/// Reads "x,y" CSV (optional single header line, units mm). Preserves full
/// double precision and input order. Throws ParseError with the offending
/// line number; consecutive duplicate points raise DuplicateConsecutive.
std::vector<Point2> read_points(const std::string& path);
std::vector<Point2> parse_points_csv(std::istream& in);

void write_points_csv(std::ostream& out, std::span<const Point2> pts);

enum class CurveFormat { json, svg, gcode };

/// JSON array of pieces: kind, start, end and for arcs center, radius,
/// orientation, plus the 1-based source point span. Doubles round-trip
/// bit-exactly.
std::string curve_to_json(const PccCurve& curve);
PccCurve curve_from_json(const std::string& text);

/// Single SVG path element, 1 user unit = 1 mm.
std::string curve_to_svg(const PccCurve& curve);

/// G21/G90 preamble, an initial G1 to the curve start, then one move per
/// piece: G1 for segments, G2 (cw) / G3 (ccw) with I,J center offsets from
/// the move's start. Fixed 4-decimal coordinates.
std::string curve_to_gcode(const PccCurve& curve);

/// Writes the curve in the chosen format. Throws DisconnectedCurve when the
/// pieces do not chain.
void write_curve(const PccCurve& curve, CurveFormat format, const std::string& path);

/// Shape spec text format: one primitive per line,
///   L x1 y1 x2 y2
///   A x1 y1 x2 y2 cx cy {cw|ccw}
/// with '#' comments. A contour whose last endpoint meets the first is closed.
ShapeSpec read_shape(const std::string& path);
ShapeSpec parse_shape(std::istream& in);

/// Diagnostic SVG: data points, recovered corners, and the curve.
std::string plot_svg(std::span<const Point2> pts, std::span<const Point2> corners,
                     const PccCurve* curve);

}  // namespace arcfit
