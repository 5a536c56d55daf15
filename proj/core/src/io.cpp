#include "arcfit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

#include "arcfit/errors.hpp"
#include "json.hpp"

namespace arcfit {

namespace {

using nlohmann::json;

std::string fmt_shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view tok, double* out) {
  tok = trim(tok);
  if (tok.empty()) return false;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), *out);
  return res.ec == std::errc{} && res.ptr == tok.data() + tok.size();
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(Point2 p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  void add(const ArcSeg& seg) {
    for (int i = 0; i <= 16; ++i) add(seg.point_at(i / 16.0));
  }
  bool valid() const { return min_x <= max_x; }
};

std::string path_d(const PccCurve& curve) {
  std::string d;
  if (curve.empty()) return d;
  d += "M " + fmt_shortest(curve.segs.front().start.x) + " " +
       fmt_shortest(curve.segs.front().start.y);
  constexpr double kPi = 3.14159265358979323846;
  for (const ArcSeg& seg : curve.segs) {
    if (seg.kind == ArcSeg::Kind::segment) {
      d += " L " + fmt_shortest(seg.end.x) + " " + fmt_shortest(seg.end.y);
    } else {
      const int large = seg.sweep() > kPi ? 1 : 0;
      const int sweep_flag = seg.orient == Orientation::ccw ? 1 : 0;
      const std::string r = fmt_shortest(seg.radius);
      d += " A " + r + " " + r + " 0 " + std::to_string(large) + " " +
           std::to_string(sweep_flag) + " " + fmt_shortest(seg.end.x) + " " +
           fmt_shortest(seg.end.y);
    }
  }
  return d;
}

std::string svg_document(const Bounds& b, const std::string& body) {
  const double margin = 0.05 * std::max({b.max_x - b.min_x, b.max_y - b.min_y, 1.0});
  const double x0 = b.min_x - margin;
  const double y0 = -(b.max_y + margin);
  const double w = (b.max_x - b.min_x) + 2 * margin;
  const double h = (b.max_y - b.min_y) + 2 * margin;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt_shortest(x0)
      << " " << fmt_shortest(y0) << " " << fmt_shortest(w) << " " << fmt_shortest(h)
      << "\">\n<g transform=\"scale(1 -1)\">\n"
      << body << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace

std::vector<Point2> parse_points_csv(std::istream& in) {
  std::vector<Point2> pts;
  std::string line;
  int line_no = 0;
  bool allow_header = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const std::size_t comma = sv.find(',');
    double x = 0.0, y = 0.0;
    const bool ok = comma != std::string_view::npos &&
                    parse_double(sv.substr(0, comma), &x) &&
                    parse_double(sv.substr(comma + 1), &y);
    if (!ok) {
      if (allow_header) {
        allow_header = false;
        continue;
      }
      throw ParseError("read_points: expected 'x,y'", line_no);
    }
    allow_header = false;
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw ParseError("read_points: non-finite coordinate", line_no);
    }
    if (!pts.empty() && pts.back().x == x && pts.back().y == y) {
      throw DuplicateConsecutive("read_points: duplicate consecutive point", line_no);
    }
    pts.push_back({x, y});
  }
  return pts;
}

std::vector<Point2> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("read_points: cannot open " + path, 0);
  return parse_points_csv(in);
}

void write_points_csv(std::ostream& out, std::span<const Point2> pts) {
  for (const Point2& p : pts) {
    out << fmt_shortest(p.x) << "," << fmt_shortest(p.y) << "\n";
  }
}

std::string curve_to_json(const PccCurve& curve) {
  json arr = json::array();
  for (const ArcSeg& seg : curve.segs) {
    json j;
    j["kind"] = seg.kind == ArcSeg::Kind::arc ? "arc" : "segment";
    j["start"] = {seg.start.x, seg.start.y};
    j["end"] = {seg.end.x, seg.end.y};
    if (seg.kind == ArcSeg::Kind::arc) {
      j["center"] = {seg.center.x, seg.center.y};
      j["radius"] = seg.radius;
      j["orientation"] = seg.orient == Orientation::ccw ? "ccw" : "cw";
    }
    if (seg.src_first > 0) {
      j["first"] = seg.src_first;
      j["last"] = seg.src_last;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

PccCurve curve_from_json(const std::string& text) {
  PccCurve curve;
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("curve_from_json: ") + e.what(), 0);
  }
  if (!arr.is_array()) throw ParseError("curve_from_json: expected an array", 0);
  for (const json& j : arr) {
    ArcSeg seg;
    const std::string kind = j.at("kind").get<std::string>();
    seg.start = {j.at("start").at(0).get<double>(), j.at("start").at(1).get<double>()};
    seg.end = {j.at("end").at(0).get<double>(), j.at("end").at(1).get<double>()};
    if (kind == "arc") {
      seg.kind = ArcSeg::Kind::arc;
      seg.center = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
      seg.radius = j.at("radius").get<double>();
      seg.orient = j.at("orientation").get<std::string>() == "cw" ? Orientation::cw
                                                                  : Orientation::ccw;
    } else if (kind == "segment") {
      seg.kind = ArcSeg::Kind::segment;
    } else {
      throw ParseError("curve_from_json: unknown piece kind '" + kind + "'", 0);
    }
    if (j.contains("first")) {
      seg.src_first = j.at("first").get<int>();
      seg.src_last = j.at("last").get<int>();
    }
    curve.segs.push_back(seg);
  }
  return curve;
}

std::string curve_to_svg(const PccCurve& curve) {
  Bounds b;
  for (const ArcSeg& seg : curve.segs) b.add(seg);
  if (!b.valid()) b = Bounds{0, 0, 1, 1};
  const std::string body = "<path fill=\"none\" stroke=\"black\" stroke-width=\"0.2\" d=\"" +
                           path_d(curve) + "\"/>\n";
  return svg_document(b, body);
}

std::string curve_to_gcode(const PccCurve& curve) {
  std::string out = "G21\nG90\n";
  if (curve.empty()) return out;
  out += "G1 X" + fmt4(curve.segs.front().start.x) + " Y" +
         fmt4(curve.segs.front().start.y) + "\n";
  for (const ArcSeg& seg : curve.segs) {
    if (seg.kind == ArcSeg::Kind::segment) {
      out += "G1 X" + fmt4(seg.end.x) + " Y" + fmt4(seg.end.y) + "\n";
    } else {
      const char* word = seg.orient == Orientation::ccw ? "G3" : "G2";
      out += std::string(word) + " X" + fmt4(seg.end.x) + " Y" + fmt4(seg.end.y) +
             " I" + fmt4(seg.center.x - seg.start.x) + " J" +
             fmt4(seg.center.y - seg.start.y) + "\n";
    }
  }
  return out;
}

void write_curve(const PccCurve& curve, CurveFormat format, const std::string& path) {
  if (!curve.is_chained()) {
    throw DisconnectedCurve("write_curve: pieces do not chain");
  }
  std::string text;
  switch (format) {
    case CurveFormat::json: text = curve_to_json(curve); break;
    case CurveFormat::svg: text = curve_to_svg(curve); break;
    case CurveFormat::gcode: text = curve_to_gcode(curve); break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_curve: cannot open " + path);
  out << text;
}

ShapeSpec parse_shape(std::istream& in) {
  ShapeSpec shape;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto tokens = split_ws(trim(line));
    if (tokens.empty()) continue;

    auto number = [&](std::size_t idx) {
      double v;
      if (idx >= tokens.size() || !parse_double(tokens[idx], &v)) {
        throw ParseError("parse_shape: expected a number", line_no);
      }
      return v;
    };

    if (tokens[0] == "L" || tokens[0] == "l") {
      if (tokens.size() != 5) throw ParseError("parse_shape: L needs 4 numbers", line_no);
      shape.pieces.push_back(ArcSeg::make_segment({number(1), number(2)},
                                                  {number(3), number(4)}));
    } else if (tokens[0] == "A" || tokens[0] == "a") {
      if (tokens.size() != 8) {
        throw ParseError("parse_shape: A needs 6 numbers and cw|ccw", line_no);
      }
      const Point2 start{number(1), number(2)};
      const Point2 end{number(3), number(4)};
      const Point2 center{number(5), number(6)};
      Orientation o;
      if (tokens[7] == "cw") o = Orientation::cw;
      else if (tokens[7] == "ccw") o = Orientation::ccw;
      else throw ParseError("parse_shape: orientation must be cw or ccw", line_no);
      const double r1 = distance(start, center);
      const double r2 = distance(end, center);
      if (std::abs(r1 - r2) > 1e-6 * std::max(r1, 1.0)) {
        throw ParseError("parse_shape: arc endpoints not equidistant from center", line_no);
      }
      shape.pieces.push_back(ArcSeg::make_arc(start, end, center, o));
    } else {
      throw ParseError("parse_shape: unknown primitive '" + tokens[0] + "'", line_no);
    }
  }
  if (shape.pieces.empty()) throw ParseError("parse_shape: no primitives", 0);
  for (std::size_t i = 1; i < shape.pieces.size(); ++i) {
    if (!same_point(shape.pieces[i - 1].end, shape.pieces[i].start)) {
      throw ParseError("parse_shape: pieces do not chain", 0);
    }
  }
  shape.closed = same_point(shape.pieces.back().end, shape.pieces.front().start);
  return shape;
}

ShapeSpec read_shape(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("read_shape: cannot open " + path, 0);
  return parse_shape(in);
}

std::string plot_svg(std::span<const Point2> pts, std::span<const Point2> corners,
                     const PccCurve* curve) {
  Bounds b;
  for (const Point2& p : pts) b.add(p);
  for (const Point2& p : corners) b.add(p);
  if (curve) {
    for (const ArcSeg& seg : curve->segs) b.add(seg);
  }
  if (!b.valid()) b = Bounds{0, 0, 1, 1};
  const double dim = std::max({b.max_x - b.min_x, b.max_y - b.min_y, 1.0});
  const double r_pt = 0.004 * dim;
  const double r_corner = 0.012 * dim;

  std::ostringstream body;
  if (curve) {
    body << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt_shortest(0.003 * dim)
         << "\" d=\"" << path_d(*curve) << "\"/>\n";
  }
  for (const Point2& p : pts) {
    body << "<circle cx=\"" << fmt_shortest(p.x) << "\" cy=\"" << fmt_shortest(p.y)
         << "\" r=\"" << fmt_shortest(r_pt) << "\" fill=\"steelblue\"/>\n";
  }
  for (const Point2& p : corners) {
    body << "<circle cx=\"" << fmt_shortest(p.x) << "\" cy=\"" << fmt_shortest(p.y)
         << "\" r=\"" << fmt_shortest(r_corner)
         << "\" fill=\"none\" stroke=\"crimson\" stroke-width=\""
         << fmt_shortest(0.004 * dim) << "\"/>\n";
  }
  return svg_document(b, body.str());
}

}  // namespace arcfit
