#include "symrigid/render.hpp"

#include "symrigid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace symrigid {

namespace {

constexpr double kSize = 480.0, kMargin = 24.0;
constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
                                    "#e6ab02", "#a6761d", "#666666", "#1f78b4", "#b2df8a"};

struct Point {
  double x, y;
};

Point project(const Eigen::VectorXd& p) {
  if (p.size() == 2) return {p(0), p(1)};
  // fixed tilt so no axis collapses
  const double a = 0.5, b = 0.35;
  double x = std::cos(a) * p(0) - std::sin(a) * p(1);
  double y0 = std::sin(a) * p(0) + std::cos(a) * p(1);
  double y = std::cos(b) * y0 - std::sin(b) * p(2);
  return {x, y};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(x) < 5e-4 ? 0.0 : x);
  return buf;
}

class Canvas {
 public:
  explicit Canvas(const std::vector<Point>& pts) {
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
    for (const auto& p : pts) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    if (pts.empty()) lo_x = hi_x = lo_y = hi_y = 0;
    span_ = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    cx_ = (lo_x + hi_x) / 2;
    cy_ = (lo_y + hi_y) / 2;
  }

  Point map(Point p) const {
    const double s = (kSize - 2 * kMargin) / span_;
    return {kSize / 2 + (p.x - cx_) * s, kSize / 2 - (p.y - cy_) * s};
  }

 private:
  double span_ = 1, cx_ = 0, cy_ = 0;
};

void header(std::string& out) {
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kSize) + "\" height=\"" + fmt(kSize) +
         "\" viewBox=\"0 0 " + fmt(kSize) + " " + fmt(kSize) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void line(std::string& out, Point a, Point b, const std::string& extra) {
  out += "<line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) + "\" x2=\"" + fmt(b.x) + "\" y2=\"" + fmt(b.y) +
         "\" stroke=\"#333333\" stroke-width=\"1.5\"" + extra + "/>\n";
}

void dot(std::string& out, Point a, const char* colour, double r, const std::string& title) {
  out += "<circle cx=\"" + fmt(a.x) + "\" cy=\"" + fmt(a.y) + "\" r=\"" + fmt(r) + "\" fill=\"" + colour +
         "\"><title>" + title + "</title></circle>\n";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

std::string render_orbit(const GainGraph& gg, const Placement& p) {
  const int n = gg.graph.vertex_count();
  std::vector<Point> reps, all;
  for (int v = 0; v < n; ++v) reps.push_back(project(p.row(v).transpose()));
  std::vector<std::pair<Point, Point>> segs;
  for (EdgeId e = 0; e < gg.graph.edge_count(); ++e) {
    const auto& edge = gg.graph.edge(e);
    Eigen::VectorXd far = gg.group.represent(gg.gains[e]).apply(p.row(edge.head).transpose());
    segs.push_back({reps[edge.tail], project(far)});
  }
  all = reps;
  for (const auto& s : segs) all.push_back(s.second);
  Canvas canvas(all);
  std::string out;
  header(out);
  for (EdgeId e = 0; e < gg.graph.edge_count(); ++e) {
    const auto& edge = gg.graph.edge(e);
    Point a = canvas.map(segs[e].first), b = canvas.map(segs[e].second);
    line(out, a, b, "");
    out += "<text x=\"" + fmt((a.x + b.x) / 2) + "\" y=\"" + fmt((a.y + b.y) / 2) +
           "\" font-size=\"10\" fill=\"#555555\">" + escape(gg.group.to_string(gg.gains[e])) + "</text>\n";
    if (!gg.group.is_identity(gg.gains[e]) || edge.is_loop()) dot(out, b, "#bbbbbb", 3.0, "image of " + std::to_string(edge.head));
  }
  for (int v = 0; v < n; ++v) dot(out, canvas.map(reps[v]), kPalette[v % 10], 5.0, std::to_string(v));
  out += "</svg>\n";
  return out;
}

std::string render_cover(const GainGraph& gg, const Placement& p) {
  if (!gg.group.is_finite()) throw Error(ErrorCode::unsupported_enumeration, "cover drawing needs a finite group");
  CoveringGraph cover = covering_graph(gg);
  Placement lifted = lift_placement(gg, p);
  std::vector<Point> pts;
  for (Eigen::Index i = 0; i < lifted.rows(); ++i) pts.push_back(project(lifted.row(i).transpose()));
  Canvas canvas(pts);
  std::string out;
  header(out);
  for (const auto& [a, b] : cover.edges) line(out, canvas.map(pts[a]), canvas.map(pts[b]), "");
  for (std::size_t i = 0; i < cover.vertices.size(); ++i) {
    const auto& cv = cover.vertices[i];
    dot(out, canvas.map(pts[i]), kPalette[cv.base % 10], 5.0,
        std::to_string(cv.base) + " " + escape(gg.group.to_string(cv.element)));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

RenderMode render_mode_from_string(const std::string& s) {
  if (s == "orbit") return RenderMode::orbit;
  if (s == "cover") return RenderMode::cover;
  throw Error(ErrorCode::invalid_argument, "unknown render mode '" + s + "'");
}

std::string render_svg(const GainGraph& gg, const Placement& placement, RenderMode mode) {
  const int d = gg.dimension();
  if (d != 2 && d != 3) throw Error(ErrorCode::invalid_argument, "rendering supports dimension 2 or 3 only");
  if (placement.rows() != gg.graph.vertex_count() || placement.cols() != d)
    throw Error(ErrorCode::invalid_argument, "placement shape does not match the graph");
  return mode == RenderMode::orbit ? render_orbit(gg, placement) : render_cover(gg, placement);
}

}  // namespace symrigid
