#include "geotree/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "geotree/errors.hpp"

namespace geotree {

namespace {

constexpr int kSx[4] = {1, -1, -1, 1};
constexpr int kSy[4] = {1, 1, -1, -1};

std::optional<int> slot_arm(const Chart& c, int sx, int sy, bool for_x) {
  if (for_x) return sx > 0 ? c.x_pos : c.x_neg;
  return sy > 0 ? c.y_pos : c.y_neg;
}

}  // namespace

void check_chart(const Chart& chart) {
  if (chart.x_neg && chart.x_pos && *chart.x_neg == *chart.x_pos)
    throw ArgumentError("x axis uses the same arm twice");
  if (chart.y_neg && chart.y_pos && *chart.y_neg == *chart.y_pos)
    throw ArgumentError("y axis uses the same arm twice");
  if (!(chart.eps > 0.0)) throw ArgumentError("chart needs eps > 0");
}

Obstacle obstacle_of(const Chart& chart) {
  check_chart(chart);
  Obstacle o;
  o.eps = chart.eps;
  for (int q = 0; q < 4; ++q) {
    auto ax = slot_arm(chart, kSx[q], kSy[q], true);
    auto ay = slot_arm(chart, kSx[q], kSy[q], false);
    o.quadrant[q] = (ax && ay && *ax == *ay) ? QuadrantShape::Band : QuadrantShape::DiamondEdge;
  }
  double e = chart.eps;
  o.corners = {{e, 0.0}, {0.0, e}, {-e, 0.0}, {0.0, -e}};
  return o;
}

Chart chart_of(const StarView& star, const OrderedConfig& a, const OrderedConfig& b, double eps) {
  Chart c;
  c.eps = eps;
  auto axis = [&](const PointOnTree& from, const PointOnTree& to, std::optional<int>& neg,
                  std::optional<int>& pos) {
    StarCoord s = star.coord(from), t = star.coord(to);
    if (!s.is_center()) neg = s.arm;
    if (!t.is_center()) {
      if (!neg)
        neg = t.arm;
      else if (*neg != t.arm)
        pos = t.arm;
    }
  };
  axis(a.p1, b.p1, c.x_neg, c.x_pos);
  axis(a.p2, b.p2, c.y_neg, c.y_pos);
  return c;
}

Chart fill_unused(const Chart& chart, int num_arms) {
  Chart c = chart;
  auto used = [&](int arm) {
    for (const auto& s : {c.x_neg, c.x_pos, c.y_neg, c.y_pos})
      if (s && *s == arm) return true;
    return false;
  };
  auto pick = [&](std::optional<int>& slot, const std::optional<int>& partner) {
    if (slot) return;
    for (int arm = 1; arm <= num_arms; ++arm)
      if (!used(arm)) {
        slot = arm;
        return;
      }
    for (int arm = 1; arm <= num_arms; ++arm)
      if (!partner || *partner != arm) {
        slot = arm;
        return;
      }
  };
  pick(c.x_neg, c.x_pos);
  pick(c.x_pos, c.x_neg);
  pick(c.y_neg, c.y_pos);
  pick(c.y_pos, c.y_neg);
  return c;
}

namespace {

std::optional<double> signed_depth(const StarCoord& s, const std::optional<int>& neg,
                                   const std::optional<int>& pos) {
  if (s.is_center()) return 0.0;
  if (neg && *neg == s.arm) return -s.depth;
  if (pos && *pos == s.arm) return s.depth;
  return std::nullopt;
}

}  // namespace

bool representable(const StarView& star, const Chart& chart, const OrderedConfig& c) {
  return signed_depth(star.coord(c.p1), chart.x_neg, chart.x_pos) &&
         signed_depth(star.coord(c.p2), chart.y_neg, chart.y_pos);
}

PlanarPoint embed(const StarView& star, const Chart& chart, const OrderedConfig& c) {
  auto x = signed_depth(star.coord(c.p1), chart.x_neg, chart.x_pos);
  auto y = signed_depth(star.coord(c.p2), chart.y_neg, chart.y_pos);
  if (!x || !y) throw DomainError("configuration is not representable in this chart");
  return {*x, *y};
}

OrderedConfig unembed(const StarView& star, const Chart& chart, const PlanarPoint& p) {
  auto one = [&](double v, const std::optional<int>& neg, const std::optional<int>& pos) {
    if (v == 0.0) return star.point(StarCoord{});
    const auto& arm = v < 0.0 ? neg : pos;
    if (!arm) throw DomainError("point lies on an unused half axis");
    return star.point(StarCoord{*arm, std::abs(v)});
  };
  return {one(p.x, chart.x_neg, chart.x_pos), one(p.y, chart.y_neg, chart.y_pos)};
}

bool point_free(const Obstacle& obs, const PlanarPoint& p, double tol) {
  int q = p.x >= 0.0 ? (p.y >= 0.0 ? 0 : 3) : (p.y >= 0.0 ? 1 : 2);
  double ax = std::abs(p.x), ay = std::abs(p.y);
  if (obs.quadrant[q] == QuadrantShape::Band) return std::abs(ax - ay) >= obs.eps - tol;
  return ax + ay >= obs.eps - tol;
}

bool segment_free(const Obstacle& obs, const PlanarPoint& p, const PlanarPoint& q, double tol) {
  double dx = q.x - p.x, dy = q.y - p.y;
  for (int k = 0; k < 4; ++k) {
    // Parameter interval of the segment inside the closed quadrant k.
    double lo = 0.0, hi = 1.0;
    auto clip = [&](double s0, double ds) {
      // keep t with s0 + t*ds >= 0
      if (ds == 0.0) {
        if (s0 < 0.0) hi = -1.0;
        return;
      }
      double t = -s0 / ds;
      if (ds > 0.0)
        lo = std::max(lo, t);
      else
        hi = std::min(hi, t);
    };
    clip(kSx[k] * p.x, kSx[k] * dx);
    clip(kSy[k] * p.y, kSy[k] * dy);
    if (lo > hi) continue;
    auto at = [&](double t) { return PlanarPoint{p.x + t * dx, p.y + t * dy}; };
    PlanarPoint a = at(lo), b = at(hi);
    if (obs.quadrant[k] == QuadrantShape::DiamondEdge) {
      double fa = kSx[k] * a.x + kSy[k] * a.y, fb = kSx[k] * b.x + kSy[k] * b.y;
      if (fa < obs.eps - tol || fb < obs.eps - tol) return false;
    } else {
      double fa = kSx[k] * a.x - kSy[k] * a.y, fb = kSx[k] * b.x - kSy[k] * b.y;
      bool above = fa >= obs.eps - tol && fb >= obs.eps - tol;
      bool below = fa <= -obs.eps + tol && fb <= -obs.eps + tol;
      if (!above && !below) return false;
    }
  }
  return true;
}

double polyline_length(const std::vector<PlanarPoint>& pts, Metric m) {
  double s = 0.0;
  for (size_t i = 1; i < pts.size(); ++i) {
    double dx = std::abs(pts[i].x - pts[i - 1].x), dy = std::abs(pts[i].y - pts[i - 1].y);
    s += m == Metric::L1 ? dx + dy : std::hypot(dx, dy);
  }
  return s;
}

double winding_angle(const std::vector<PlanarPoint>& pts) {
  double w = 0.0;
  for (size_t i = 1; i < pts.size(); ++i) {
    const auto& a = pts[i - 1];
    const auto& b = pts[i];
    w += std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y);
  }
  return w;
}

std::optional<PlanarPath> planar_geodesic(const Obstacle& obs, const PlanarPoint& a,
                                          const PlanarPoint& b, Metric m, Winding cls) {
  if (!point_free(obs, a) || !point_free(obs, b))
    throw InfeasibleError("planar endpoint lies inside the forbidden region");
  std::optional<PlanarPath> best;
  auto consider = [&](std::vector<PlanarPoint> pts) {
    for (size_t i = 1; i < pts.size(); ++i)
      if (!segment_free(obs, pts[i - 1], pts[i])) return;
    if (cls != Winding::Any) {
      double w = winding_angle(pts);
      if ((cls == Winding::CCW && !(w > 0.0)) || (cls == Winding::CW && !(w < 0.0))) return;
    }
    double len = polyline_length(pts, m);
    if (!best || len < best->length) best = PlanarPath{std::move(pts), len};
  };
  consider({a, b});
  const auto& c = obs.corners;
  const int n = static_cast<int>(c.size());
  for (int dir : {1, -1})
    for (int start = 0; start < n; ++start)
      for (int count = 1; count <= n; ++count) {
        std::vector<PlanarPoint> pts{a};
        for (int i = 0; i < count; ++i) pts.push_back(c[((start + dir * i) % n + n) % n]);
        pts.push_back(b);
        consider(std::move(pts));
      }
  if (best) {
    // Drop corners that coincide with an endpoint.
    auto& p = best->points;
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
  return best;
}

BiPath unembed_path(const StarView& star, const Chart& chart, const PlanarPath& path) {
  std::vector<OrderedConfig> cs;
  for (const auto& p : path.points) cs.push_back(unembed(star, chart, p));
  return path_through(star.tree(), cs, true, chart.eps);
}

}  // namespace geotree
