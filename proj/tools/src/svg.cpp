#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "geotree/chart.hpp"
#include "geotree/errors.hpp"

namespace geotree::svg {

namespace {

constexpr double kSize = 560.0;
constexpr double kMargin = 40.0;

struct Frame {
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;

  void fit(const std::vector<Xy>& pts) {
    if (pts.empty()) return;
    min_x = max_x = pts[0].x;
    min_y = max_y = pts[0].y;
    for (const auto& p : pts) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  double scale() const { return kSize / std::max({max_x - min_x, max_y - min_y, 1e-9}); }
  Xy map(Xy p) const {
    double s = scale();
    double cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
    return {kMargin + kSize / 2 + (p.x - cx) * s, kMargin + kSize / 2 + (p.y - cy) * s};
  }
};

class Canvas {
 public:
  explicit Canvas(Frame f) : f_(f) { body_ << std::fixed << std::setprecision(2); }

  void line(Xy a, Xy b, const std::string& style) {
    a = f_.map(a);
    b = f_.map(b);
    body_ << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y
          << "\" " << style << "/>\n";
  }
  void polyline(const std::vector<Xy>& pts, const std::string& style, bool closed = false) {
    body_ << (closed ? "<polygon" : "<polyline") << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Xy p = f_.map(pts[i]);
      body_ << (i ? " " : "") << p.x << "," << p.y;
    }
    body_ << "\" " << style << "/>\n";
  }
  void circle(Xy c, double r, const std::string& style) {
    c = f_.map(c);
    body_ << "<circle cx=\"" << c.x << "\" cy=\"" << c.y << "\" r=\"" << r << "\" " << style
          << "/>\n";
  }
  void square(Xy c, double half, const std::string& style) {
    c = f_.map(c);
    body_ << "<rect x=\"" << c.x - half << "\" y=\"" << c.y - half << "\" width=\"" << 2 * half
          << "\" height=\"" << 2 * half << "\" " << style << "/>\n";
  }
  // Offsets are in screen pixels.
  void text(Xy at, double dx, double dy, const std::string& s, const std::string& style = "") {
    at = f_.map(at);
    body_ << "<text x=\"" << at.x + dx << "\" y=\"" << at.y + dy
          << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" " << style
          << ">" << s << "</text>\n";
  }

  std::string str(const std::string& title) const {
    std::ostringstream os;
    double side = kSize + 2 * kMargin;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<!-- geotree-cli 0.1.0 -->\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
       << "\" viewBox=\"0 0 " << side << " " << side << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << side / 2 << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" "
       << "text-anchor=\"middle\">" << title << "</text>\n"
       << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  Frame f_;
  std::ostringstream body_;
};

constexpr const char* kTreeStyle = "stroke=\"#9a9a9a\" stroke-width=\"2\" fill=\"none\"";

void draw_tree(Canvas& cv, const Tree& tree, const Layout& lay) {
  for (const auto& e : tree.edges()) cv.line(lay.vertex[e.u], lay.vertex[e.v], kTreeStyle);
  for (int v = 0; v < tree.num_vertices(); ++v) {
    cv.circle(lay.vertex[v], 2.5, "fill=\"#9a9a9a\"");
    if (int n = tree.leaf_number(v)) cv.text(lay.vertex[v], 0, -10, std::to_string(n));
  }
}

Frame tree_frame(const Tree& tree, const Layout& lay) {
  Frame f;
  f.fit(lay.vertex);
  if (tree.num_vertices() == 0) throw ArgumentError("empty tree");
  return f;
}

std::vector<Xy> trace(const Tree& tree, const Layout& lay, const BiPath& path, int particle) {
  std::vector<Xy> pts;
  for (const auto& b : refine(tree, path).breakpoints)
    pts.push_back(lay.at(tree, particle == 1 ? b.c.p1 : b.c.p2));
  return pts;
}

}  // namespace

Xy Layout::at(const Tree& tree, const PointOnTree& p) const {
  if (p.is_vertex()) return vertex.at(p.vertex);
  const Edge& e = tree.edge(p.edge);
  double f = p.offset / e.len;
  const Xy& u = vertex.at(e.u);
  const Xy& v = vertex.at(e.v);
  return {u.x + f * (v.x - u.x), u.y + f * (v.y - u.y)};
}

Layout layout_tree(const Tree& tree) {
  int n = tree.num_vertices();
  int root = 0;
  for (int v = 0; v < n; ++v)
    if (tree.degree(v) > tree.degree(root)) root = v;
  std::vector<double> radius(n, 0.0), first(n, 0.0), last(n, 0.0);
  int leaves = 0;
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    bool any = false;
    for (int e : tree.incident(v)) {
      int w = tree.other_end(e, v);
      if (w == parent) continue;
      radius[w] = radius[v] + tree.edge(e).len;
      dfs(w, v);
      if (!any) first[v] = first[w];
      last[v] = last[w];
      any = true;
    }
    if (!any) first[v] = last[v] = leaves++;
  };
  dfs(root, -1);
  Layout lay;
  lay.vertex.resize(n);
  for (int v = 0; v < n; ++v) {
    double angle = 2.0 * std::numbers::pi * (first[v] + last[v]) / 2.0 / std::max(leaves, 1);
    lay.vertex[v] = {radius[v] * std::sin(angle), -radius[v] * std::cos(angle)};
  }
  return lay;
}

std::string render_instance(const Tree& tree, const OrderedConfig& a, const OrderedConfig& b,
                            const std::optional<BiPath>& path, const std::string& title) {
  Layout lay = layout_tree(tree);
  Canvas cv(tree_frame(tree, lay));
  draw_tree(cv, tree, lay);
  if (path) {
    cv.polyline(trace(tree, lay, *path, 1), "stroke=\"#1f6fd1\" stroke-width=\"7\" "
                                            "stroke-opacity=\"0.45\" fill=\"none\"");
    cv.polyline(trace(tree, lay, *path, 2), "stroke=\"#d1421f\" stroke-width=\"3.5\" "
                                            "stroke-opacity=\"0.8\" fill=\"none\"");
  }
  cv.circle(lay.at(tree, a.p1), 7, "fill=\"#1f6fd1\" stroke=\"black\"");
  cv.square(lay.at(tree, a.p2), 6.5, "fill=\"#d1421f\" stroke=\"black\"");
  cv.circle(lay.at(tree, b.p1), 7, "fill=\"none\" stroke=\"#1f6fd1\" stroke-width=\"2.5\"");
  cv.square(lay.at(tree, b.p2), 6.5, "fill=\"none\" stroke=\"#d1421f\" stroke-width=\"2.5\"");
  return cv.str(title);
}

std::string render_hull(const Tree& tree, const HullDiagram& d, const std::string& title) {
  Layout lay = layout_tree(tree);
  Canvas cv(tree_frame(tree, lay));
  draw_tree(cv, tree, lay);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      auto stops = tree_geodesic(tree, d.dots[i].point, d.dots[j].point);
      for (std::size_t k = 1; k < stops.size(); ++k)
        cv.line(lay.at(tree, stops[k - 1].point), lay.at(tree, stops[k].point),
                "stroke=\"#e0b040\" stroke-width=\"8\" stroke-linecap=\"round\"");
    }
  for (const auto& br : d.branches) {
    Xy v = lay.vertex[br.vertex];
    for (const auto& arm : br.arms) {
      Xy w = lay.vertex[tree.other_end(arm.edge, br.vertex)];
      double dx = w.x - v.x, dy = w.y - v.y, len = std::hypot(dx, dy);
      if (len <= 0) continue;
      // About 20 pixels from the vertex along the arm.
      Frame f;
      f.fit(lay.vertex);
      double k = 20.0 / f.scale() / len;
      cv.text({v.x + dx * k, v.y + dy * k}, 0, 4, std::to_string(arm.arm_number),
              "fill=\"#7a4b00\"");
    }
  }
  for (const auto& dot : d.dots)
    if (dot.color == DotColor::White)
      cv.circle(lay.at(tree, dot.point), 9, "fill=\"white\" stroke=\"black\" stroke-width=\"2\"");
  for (const auto& dot : d.dots)
    if (dot.color == DotColor::Black) cv.circle(lay.at(tree, dot.point), 5.5, "fill=\"black\"");
  return cv.str(title);
}

std::string render_plane(const StarView& star, double eps, const OrderedConfig& a,
                         const OrderedConfig& b, const std::optional<BiPath>& path,
                         const std::string& title) {
  Chart chart = fill_unused(chart_of(star, a, b, eps), star.num_arms());
  Obstacle obs = obstacle_of(chart);
  PlanarPoint pa = embed(star, chart, a), pb = embed(star, chart, b);

  std::vector<std::vector<Xy>> pieces;
  if (path) {
    std::vector<Xy> cur;
    for (const auto& bp : refine(star.tree(), *path).breakpoints) {
      if (representable(star, chart, bp.c)) {
        PlanarPoint p = embed(star, chart, bp.c);
        cur.push_back({p.x, -p.y});
      } else if (!cur.empty()) {
        pieces.push_back(std::move(cur));
        cur.clear();
      }
    }
    if (!cur.empty()) pieces.push_back(std::move(cur));
  }
  double r = std::max({std::abs(pa.x), std::abs(pa.y), std::abs(pb.x), std::abs(pb.y), 3 * eps});
  for (const auto& piece : pieces)
    for (const auto& p : piece) r = std::max({r, std::abs(p.x), std::abs(p.y)});
  r += eps;

  // The plane's y axis points up; screen coordinates use -y.
  Frame f;
  f.fit({{-r, -r}, {r, r}});
  Canvas cv(f);
  const double sx[4] = {1, -1, -1, 1}, sy[4] = {1, 1, -1, -1};
  for (int q = 0; q < 4; ++q) {
    double e = obs.eps;
    std::vector<Xy> poly;
    if (obs.quadrant[q] == QuadrantShape::DiamondEdge)
      poly = {{0, 0}, {sx[q] * e, 0}, {0, -sy[q] * e}};
    else
      poly = {{0, 0},
              {sx[q] * e, 0},
              {sx[q] * r, -sy[q] * (r - e)},
              {sx[q] * (r - e), -sy[q] * r},
              {0, -sy[q] * e}};
    cv.polyline(poly, "fill=\"#f2c7c7\" stroke=\"#c05050\" stroke-width=\"1\"", true);
  }
  cv.line({-r, 0}, {r, 0}, "stroke=\"black\" stroke-width=\"1\"");
  cv.line({0, -r}, {0, r}, "stroke=\"black\" stroke-width=\"1\"");
  auto label = [](const char* axis, const std::optional<int>& arm) {
    return std::string(axis) + (arm ? " arm " + std::to_string(*arm) : " unused");
  };
  cv.text({r, 0}, -40, -8, label("x+", chart.x_pos));
  cv.text({-r, 0}, 40, -8, label("x-", chart.x_neg));
  cv.text({0, -r}, 45, 12, label("y+", chart.y_pos));
  cv.text({0, r}, 45, -4, label("y-", chart.y_neg));
  for (const auto& piece : pieces)
    cv.polyline(piece, "stroke=\"#1f6fd1\" stroke-width=\"2.5\" fill=\"none\"");
  cv.circle({pa.x, -pa.y}, 6, "fill=\"black\"");
  cv.circle({pb.x, -pb.y}, 6, "fill=\"white\" stroke=\"black\" stroke-width=\"2\"");
  cv.text({pa.x, -pa.y}, 0, -10, "a");
  cv.text({pb.x, -pb.y}, 0, -10, "b");
  return cv.str(title);
}

}  // namespace geotree::svg
