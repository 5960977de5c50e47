#include "geotree/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geotree/errors.hpp"

namespace geotree {

std::string to_string(Metric m) { return m == Metric::L1 ? "l1" : "l2"; }

Metric metric_from_string(const std::string& s) {
  if (s == "l1" || s == "L1") return Metric::L1;
  if (s == "l2" || s == "L2") return Metric::L2;
  throw ArgumentError("metric must be l1 or l2");
}

UnorderedConfig UnorderedConfig::make(const PointOnTree& a, const PointOnTree& b) {
  if (compare_points(b, a) < 0) return {b, a};
  return {a, b};
}

double combine(double d1, double d2, Metric m) {
  return m == Metric::L1 ? d1 + d2 : std::hypot(d1, d2);
}

double config_distance(const Tree& tree, const OrderedConfig& a, const OrderedConfig& b,
                       Metric m) {
  return combine(distance(tree, a.p1, b.p1), distance(tree, a.p2, b.p2), m);
}

double config_distance(const Tree& tree, const UnorderedConfig& a, const UnorderedConfig& b,
                       Metric m) {
  double straight = config_distance(tree, a.as_ordered(), b.as_ordered(), m);
  double crossed = config_distance(tree, a.as_ordered(), OrderedConfig{b.p2, b.p1}, m);
  return std::min(straight, crossed);
}

double separation(const Tree& tree, const OrderedConfig& c) {
  return distance(tree, c.p1, c.p2);
}

bool in_feps(const Tree& tree, const OrderedConfig& c, double eps) {
  return separation(tree, c) >= eps - 1e-12;
}

void check_well_formed(const Tree& tree, const BiPath& path) {
  const auto& bp = path.breakpoints;
  if (bp.empty()) throw StructuralError("path has no breakpoints");
  if (bp.front().t != 0.0 || bp.back().t != 1.0)
    throw StructuralError("path times must start at 0 and end at 1");
  if (bp.size() == 1) throw StructuralError("path needs at least two breakpoints");
  for (size_t i = 0; i < bp.size(); ++i) {
    tree.validate(bp[i].c.p1);
    tree.validate(bp[i].c.p2);
    if (i > 0 && !(bp[i].t > bp[i - 1].t)) throw StructuralError("path times must increase");
  }
}

namespace {

double seg_l1(const Tree& tree, const OrderedConfig& a, const OrderedConfig& b) {
  return distance(tree, a.p1, b.p1) + distance(tree, a.p2, b.p2);
}

BiPath timed(const Tree& tree, std::vector<OrderedConfig> configs, bool ordered, double eps) {
  std::vector<OrderedConfig> kept;
  for (const auto& c : configs)
    if (kept.empty() || !(kept.back() == c)) kept.push_back(c);
  BiPath out;
  out.ordered = ordered;
  out.eps = eps;
  std::vector<double> cum{0.0};
  for (size_t i = 1; i < kept.size(); ++i) cum.push_back(cum.back() + seg_l1(tree, kept[i - 1], kept[i]));
  double total = cum.back();
  if (kept.size() == 1 || !(total > 0.0)) {
    out.breakpoints = {{0.0, kept.front()}, {1.0, kept.front()}};
    return out;
  }
  for (size_t i = 0; i < kept.size(); ++i) {
    double t = i + 1 == kept.size() ? 1.0 : cum[i] / total;
    if (!out.breakpoints.empty() && !(t > out.breakpoints.back().t)) continue;
    out.breakpoints.push_back({t, kept[i]});
  }
  if (out.breakpoints.back().t != 1.0) out.breakpoints.back().t = 1.0;
  return out;
}

}  // namespace

BiPath path_through(const Tree& tree, const std::vector<OrderedConfig>& configs, bool ordered,
                    double eps) {
  if (configs.empty()) throw ArgumentError("path needs at least one configuration");
  return timed(tree, configs, ordered, eps);
}

BiPath retime_by_arclength(const Tree& tree, BiPath path) {
  std::vector<OrderedConfig> cs;
  for (const auto& b : path.breakpoints) cs.push_back(b.c);
  return timed(tree, cs, path.ordered, path.eps);
}

BiPath concat(const Tree& tree, const BiPath& a, const BiPath& b) {
  if (!(a.end() == b.start())) throw ArgumentError("paths do not meet");
  std::vector<OrderedConfig> cs;
  for (const auto& x : a.breakpoints) cs.push_back(x.c);
  for (const auto& x : b.breakpoints) cs.push_back(x.c);
  return timed(tree, cs, a.ordered, std::max(a.eps, b.eps));
}

BiPath reversed(const BiPath& path) {
  BiPath out = path;
  out.breakpoints.clear();
  for (auto it = path.breakpoints.rbegin(); it != path.breakpoints.rend(); ++it)
    out.breakpoints.push_back({1.0 - it->t, it->c});
  out.breakpoints.front().t = 0.0;
  out.breakpoints.back().t = 1.0;
  return out;
}

BiPath swap_particles(const BiPath& path) {
  BiPath out = path;
  for (auto& b : out.breakpoints) std::swap(b.c.p1, b.c.p2);
  return out;
}

OrderedConfig evaluate(const Tree& tree, const BiPath& path, double t) {
  const auto& bp = path.breakpoints;
  if (t <= bp.front().t) return bp.front().c;
  if (t >= bp.back().t) return bp.back().c;
  auto it = std::upper_bound(bp.begin(), bp.end(), t,
                             [](double x, const Breakpoint& b) { return x < b.t; });
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  double f = (t - lo.t) / (hi.t - lo.t);
  double d1 = distance(tree, lo.c.p1, hi.c.p1), d2 = distance(tree, lo.c.p2, hi.c.p2);
  return {point_along(tree, lo.c.p1, hi.c.p1, f * d1), point_along(tree, lo.c.p2, hi.c.p2, f * d2)};
}

BiPath refine(const Tree& tree, const BiPath& path) {
  check_well_formed(tree, path);
  BiPath out = path;
  out.breakpoints.clear();
  const auto& bp = path.breakpoints;
  for (size_t j = 0; j + 1 < bp.size(); ++j) {
    const auto& lo = bp[j];
    const auto& hi = bp[j + 1];
    out.breakpoints.push_back(lo);
    auto g1 = tree_geodesic(tree, lo.c.p1, hi.c.p1);
    auto g2 = tree_geodesic(tree, lo.c.p2, hi.c.p2);
    std::vector<double> fr;
    for (size_t i = 1; i + 1 < g1.size(); ++i) fr.push_back(g1[i].s / g1.back().s);
    for (size_t i = 1; i + 1 < g2.size(); ++i) fr.push_back(g2[i].s / g2.back().s);
    std::sort(fr.begin(), fr.end());
    double dt = hi.t - lo.t;
    for (double f : fr) {
      double t = lo.t + f * dt;
      if (!(t > out.breakpoints.back().t) || !(t < hi.t)) continue;
      OrderedConfig c{point_along(tree, lo.c.p1, hi.c.p1, f * g1.back().s),
                      point_along(tree, lo.c.p2, hi.c.p2, f * g2.back().s)};
      out.breakpoints.push_back({t, c});
    }
  }
  out.breakpoints.push_back(bp.back());
  return out;
}

double path_length(const Tree& tree, const BiPath& path, Metric m) {
  check_well_formed(tree, path);
  double total = 0.0;
  const auto& bp = path.breakpoints;
  for (size_t j = 0; j + 1 < bp.size(); ++j)
    total += combine(distance(tree, bp[j].c.p1, bp[j + 1].c.p1),
                     distance(tree, bp[j].c.p2, bp[j + 1].c.p2), m);
  return total;
}

namespace {

bool on_closed_edge(const Tree& tree, int e, const PointOnTree& x) {
  const Edge& ed = tree.edge(e);
  return x.is_vertex() ? (x.vertex == ed.u || x.vertex == ed.v) : x.edge == e;
}

// Edge whose closure holds all four points, or -1.
int shared_edge(const Tree& tree, const PointOnTree* pts) {
  std::vector<int> cand;
  for (int i = 0; i < 4; ++i) {
    if (pts[i].is_vertex()) {
      for (int e : tree.incident(pts[i].vertex)) cand.push_back(e);
    } else {
      cand.push_back(pts[i].edge);
    }
  }
  for (int e : cand) {
    bool all = true;
    for (int i = 0; i < 4 && all; ++i) all = on_closed_edge(tree, e, pts[i]);
    if (all) return e;
  }
  return -1;
}

}  // namespace

double min_separation(const Tree& tree, const BiPath& path) {
  BiPath r = refine(tree, path);
  const auto& bp = r.breakpoints;
  double best = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < bp.size(); ++j) best = std::min(best, separation(tree, bp[j].c));
  for (size_t j = 0; j + 1 < bp.size(); ++j) {
    PointOnTree pts[4] = {bp[j].c.p1, bp[j + 1].c.p1, bp[j].c.p2, bp[j + 1].c.p2};
    int e = shared_edge(tree, pts);
    if (e < 0) continue;  // separation is affine on this segment
    double g0 = tree.offset_on(e, pts[0]) - tree.offset_on(e, pts[2]);
    double g1 = tree.offset_on(e, pts[1]) - tree.offset_on(e, pts[3]);
    if ((g0 < 0.0 && g1 > 0.0) || (g0 > 0.0 && g1 < 0.0)) best = 0.0;
  }
  return best;
}

OrderedConfig retract_to_feps(const Tree& tree, const OrderedConfig& a, double eps) {
  if (!(eps > 0.0) || eps > tree.min_edge_length() + 1e-12)
    throw ArgumentError("eps must be positive and at most the shortest edge length");
  double sep = separation(tree, a);
  if (sep >= eps - 1e-12) return a;
  if (a.p1 == a.p2) throw DomainError("coincident points are outside F(G,2)");

  // One point at a vertex: push the other out along its edge.
  if (a.p1.is_vertex() || a.p2.is_vertex()) {
    bool first_fixed = a.p1.is_vertex();
    const PointOnTree& v = first_fixed ? a.p1 : a.p2;
    const PointOnTree& x = first_fixed ? a.p2 : a.p1;
    if (x.is_vertex()) throw DomainError("vertex pair closer than eps");
    const Edge& e = tree.edge(x.edge);
    if (e.u != v.vertex && e.v != v.vertex) throw DomainError("unexpected retraction geometry");
    PointOnTree moved = tree.point(x.edge, e.u == v.vertex ? eps : e.len - eps);
    return first_fixed ? OrderedConfig{v, moved} : OrderedConfig{moved, v};
  }

  // Same edge: symmetric push, stopping at a vertex if one is reached.
  if (a.p1.edge == a.p2.edge) {
    const Edge& e = tree.edge(a.p1.edge);
    double o1 = a.p1.offset, o2 = a.p2.offset;
    double mid = 0.5 * (o1 + o2);
    double lo = mid - 0.5 * eps, hi = mid + 0.5 * eps;
    if (lo < 0.0) {
      lo = 0.0;
      hi = eps;
    } else if (hi > e.len) {
      hi = e.len;
      lo = e.len - eps;
    }
    PointOnTree plo = tree.point(e.id, lo), phi = tree.point(e.id, hi);
    return o1 < o2 ? OrderedConfig{plo, phi} : OrderedConfig{phi, plo};
  }

  // A vertex between them: scale both distances to it.
  const Edge& e1 = tree.edge(a.p1.edge);
  const Edge& e2 = tree.edge(a.p2.edge);
  int v = (e1.u == e2.u || e1.u == e2.v) ? e1.u : e1.v;
  if (v != e2.u && v != e2.v) throw DomainError("unexpected retraction geometry");
  double r1 = v == e1.u ? a.p1.offset : e1.len - a.p1.offset;
  double r2 = v == e2.u ? a.p2.offset : e2.len - a.p2.offset;
  double s = eps / (r1 + r2);
  double n1 = r1 * s, n2 = r2 * s;
  return {tree.point(e1.id, v == e1.u ? n1 : e1.len - n1),
          tree.point(e2.id, v == e2.u ? n2 : e2.len - n2)};
}

double path_sup_distance(const Tree& tree, const BiPath& g, const BiPath& h, int samples) {
  std::vector<double> ts;
  for (int i = 0; i <= samples; ++i) ts.push_back(static_cast<double>(i) / samples);
  for (const auto& b : g.breakpoints) ts.push_back(b.t);
  for (const auto& b : h.breakpoints) ts.push_back(b.t);
  bool ordered = g.ordered && h.ordered;
  double sup = 0.0;
  for (double t : ts) {
    OrderedConfig x = evaluate(tree, g, t), y = evaluate(tree, h, t);
    double d = distance(tree, x.p1, y.p1) + distance(tree, x.p2, y.p2);
    if (!ordered) d = std::min(d, distance(tree, x.p1, y.p2) + distance(tree, x.p2, y.p1));
    sup = std::max(sup, d);
  }
  return sup;
}

}  // namespace geotree
