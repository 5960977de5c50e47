#include "geotree/unordered.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "geotree/errors.hpp"

namespace geotree {

std::string to_string(HullType t) {
  switch (t) {
    case HullType::Y1: return "Y1";
    case HullType::Y2: return "Y2";
    case HullType::X: return "X";
    case HullType::H: return "H";
    case HullType::I1: return "I1";
    case HullType::I2: return "I2";
    case HullType::I3: return "I3";
  }
  return "?";
}

std::string to_string(DotColor c) { return c == DotColor::Black ? "B" : "W"; }

std::string to_string(ESet e) {
  switch (e) {
    case ESet::E1: return "E1";
    case ESet::E2: return "E2";
    case ESet::E3: return "E3";
    case ESet::E1Prime: return "E1'";
    case ESet::E2Prime: return "E2'";
    case ESet::Single: return "E";
  }
  return "?";
}

namespace {

bool black(int dot) { return dot < 2; }

bool contains(const HullDiagram& d, int end, DotColor c) {
  for (int i : d.ends[end])
    if (d.dots[i].color == c) return true;
  return false;
}

// Orders an I diagram's dots by distance from its first end.
std::array<double, 4> coords(const Tree& tree, const HullDiagram& d) {
  std::array<double, 4> s{};
  const PointOnTree& origin = d.dots[d.ends[0].front()].point;
  for (int i = 0; i < 4; ++i) s[i] = distance(tree, origin, d.dots[i].point);
  return s;
}

void classify_i(const Tree& tree, HullDiagram& d) {
  int ei = 0, ej = 1;
  double best = -1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      double dist = distance(tree, d.dots[i].point, d.dots[j].point);
      if (dist > best) {
        best = dist;
        ei = i;
        ej = j;
      }
    }
  for (int i = 0; i < 4; ++i) {
    if (d.dots[i].point == d.dots[ei].point) d.ends[0].push_back(i);
    if (d.dots[i].point == d.dots[ej].point) d.ends[1].push_back(i);
  }
  const PointOnTree& p = d.dots[ei].point;
  const PointOnTree& q = d.dots[ej].point;
  for (const auto& stop : tree_geodesic(tree, p, q))
    if (stop.point.is_vertex() && !(stop.point == p) && !(stop.point == q) &&
        tree.degree(stop.point.vertex) >= 3)
      d.interior_vertices.push_back(stop.point.vertex);
  if (d.interior_vertices.empty()) {
    d.type = HullType::I3;
    return;
  }
  // A vertex holding a dot is where Y diagrams degenerate into this one; its
  // arm numbers keep those limits consistent.
  int ref = -1;
  for (int v : d.interior_vertices)
    for (const auto& dot : d.dots)
      if (dot.point == PointOnTree::at_vertex(v) && (ref < 0 || v < ref)) ref = v;
  if (ref < 0) ref = *std::min_element(d.interior_vertices.begin(), d.interior_vertices.end());
  d.reference_vertex = ref;
  d.end_arm_numbers[0] = arm_number(tree, ref, edge_toward(tree, ref, p));
  d.end_arm_numbers[1] = arm_number(tree, ref, edge_toward(tree, ref, q));
  int small = d.end_arm_numbers[0] < d.end_arm_numbers[1] ? 0 : 1;
  int large = 1 - small;
  if (contains(d, small, DotColor::White) && contains(d, large, DotColor::Black))
    d.type = HullType::I1;
  else if (contains(d, small, DotColor::Black) && contains(d, large, DotColor::White))
    d.type = HullType::I2;
  else
    d.type = HullType::I3;
}

}  // namespace

HullDiagram hull_classify(const Tree& tree, const UnorderedConfig& a, const UnorderedConfig& b) {
  for (const auto* p : {&a.p1, &a.p2, &b.p1, &b.p2}) tree.validate(*p);
  if (a.p1 == a.p2 || b.p1 == b.p2)
    throw DomainError("an unordered configuration needs two distinct points");
  HullDiagram d;
  d.dots = {Dot{a.p1, DotColor::Black}, Dot{a.p2, DotColor::Black}, Dot{b.p1, DotColor::White},
            Dot{b.p2, DotColor::White}};

  std::set<int> hull_vertices;
  for (int j = 1; j < 4; ++j)
    for (const auto& stop : tree_geodesic(tree, d.dots[0].point, d.dots[j].point))
      if (stop.point.is_vertex()) hull_vertices.insert(stop.point.vertex);

  for (int v : hull_vertices) {
    std::map<int, std::vector<int>> dirs;
    std::vector<int> at;
    for (int i = 0; i < 4; ++i) {
      int e = edge_toward(tree, v, d.dots[i].point);
      if (e < 0)
        at.push_back(i);
      else
        dirs[e].push_back(i);
    }
    if (tree.degree(v) >= 3) {
      bool has_b = false, has_w = false;
      for (int i : at) (black(i) ? has_b : has_w) = true;
      if (has_b && has_w) d.near_boundary = true;
    }
    if (dirs.size() < 3) continue;
    HullBranch br;
    br.vertex = v;
    br.at_vertex = at;
    PointOnTree pv = PointOnTree::at_vertex(v);
    for (auto& [e, ds] : dirs) {
      std::sort(ds.begin(), ds.end(), [&](int x, int y) {
        return distance(tree, pv, d.dots[x].point) < distance(tree, pv, d.dots[y].point);
      });
      br.arms.push_back(HullArm{e, arm_number(tree, v, e), ds});
    }
    d.branches.push_back(std::move(br));
  }

  if (d.branches.empty()) {
    classify_i(tree, d);
  } else if (d.branches.size() == 1) {
    const auto& br = d.branches[0];
    if (br.arms.size() == 4)
      d.type = HullType::X;
    else
      d.type = br.at_vertex.empty() ? HullType::Y2 : HullType::Y1;
  } else {
    d.type = HullType::H;
    // Drop the arm joining the two branch vertices.
    for (int k = 0; k < 2; ++k) {
      auto& br = d.branches[k];
      int link = edge_toward(tree, br.vertex, PointOnTree::at_vertex(d.branches[1 - k].vertex));
      std::erase_if(br.arms, [&](const HullArm& arm) { return arm.edge == link; });
    }
  }
  for (auto& br : d.branches)
    std::sort(br.arms.begin(), br.arms.end(),
              [](const HullArm& x, const HullArm& y) { return x.arm_number < y.arm_number; });
  return d;
}

namespace {

// The doubled arm of a Y diagram with its inner and outer dot. For Y1 the
// vertex dot plays the inner dot and the doubled arm is the one whose dot
// shares its color.
struct YShape {
  int doubled = 0;  // index into the branch's arms
  int inner = 0, outer = 0;
};

YShape y_shape(const HullDiagram& d) {
  const auto& br = d.branches.front();
  YShape s;
  if (d.type == HullType::Y2) {
    for (int k = 0; k < 3; ++k)
      if (br.arms[k].dots.size() == 2) s.doubled = k;
    s.inner = br.arms[s.doubled].dots[0];
    s.outer = br.arms[s.doubled].dots[1];
  } else {
    s.inner = br.at_vertex.front();
    for (int k = 0; k < 3; ++k)
      if (d.dots[br.arms[k].dots[0]].color == d.dots[s.inner].color) s.doubled = k;
    s.outer = br.arms[s.doubled].dots[0];
  }
  return s;
}

bool y_mixed(const HullDiagram& d) {
  YShape s = y_shape(d);
  return d.type == HullType::Y2 && d.dots[s.inner].color != d.dots[s.outer].color;
}

}  // namespace

ESet assign_eset(const HullDiagram& d) {
  switch (d.type) {
    case HullType::I1: return ESet::E1;
    case HullType::I2: return ESet::E2;
    case HullType::I3:
    case HullType::X:
    case HullType::H: return ESet::E3;
    case HullType::Y1:
    case HullType::Y2: {
      if (y_mixed(d)) return ESet::E3;
      int dot = d.branches.front().arms.front().dots.front();
      return d.dots[dot].color == DotColor::Black ? ESet::E1 : ESet::E2;
    }
  }
  return ESet::E3;
}

namespace {

int next3(int arm) { return arm % 3 + 1; }
int prev3(int arm) { return (arm + 1) % 3 + 1; }

const HullArm& arm_with_number(const HullBranch& br, int number) {
  for (const auto& arm : br.arms)
    if (arm.arm_number == number) return arm;
  throw StructuralError("hull arm not found");
}

}  // namespace

ESet assign_eset_y(const Tree& tree, const HullDiagram& d) {
  if (d.is_i()) {
    // The one I diagram kept in E2': the segment crosses the vertex, the end
    // clockwise after the empty arm holds a white dot and the other end a black one.
    int v = -1;
    for (int x = 0; x < tree.num_vertices(); ++x)
      if (tree.degree(x) >= 3) v = x;
    const PointOnTree& p = d.dots[d.ends[0].front()].point;
    const PointOnTree& q = d.dots[d.ends[1].front()].point;
    int ep = edge_toward(tree, v, p), eq = edge_toward(tree, v, q);
    if (ep < 0 || eq < 0 || ep == eq) return ESet::E1Prime;
    int arm_p = arm_number(tree, v, ep), arm_q = arm_number(tree, v, eq);
    int empty = 6 - arm_p - arm_q;
    int end_next = arm_p == next3(empty) ? 0 : 1;
    int end_prev = 1 - end_next;
    if (contains(d, end_next, DotColor::White) && contains(d, end_prev, DotColor::Black))
      return ESet::E2Prime;
    return ESet::E1Prime;
  }
  if (d.type == HullType::Y2 && y_mixed(d)) {
    const auto& br = d.branches.front();
    int dn = br.arms[y_shape(d).doubled].arm_number;
    int dot_prev = arm_with_number(br, prev3(dn)).dots.front();
    return d.dots[dot_prev].color == DotColor::Black ? ESet::E1Prime : ESet::E2Prime;
  }
  return ESet::E2Prime;
}

double y_t0(YTimedKind kind, double d1, double d2, double d3, double d4) {
  auto ratio = [](double x, double y) { return x + y > 0.0 ? x / (x + y) : 0.0; };
  if (kind == YTimedKind::A) return std::max(ratio(2.0 * d1, d3), ratio(d2, d4));
  return std::min(ratio(d1, 2.0 * d3), ratio(d2, d4));
}

namespace {

int rule_of(ESet e) {
  switch (e) {
    case ESet::E1:
    case ESet::E1Prime:
    case ESet::Single: return 0;
    case ESet::E2:
    case ESet::E2Prime: return 1;
    case ESet::E3: return 2;
  }
  return 0;
}

BiPath compile(const Tree& tree, const HullDiagram& d,
               const std::vector<std::vector<Leg>>& phases) {
  std::array<PointOnTree, 2> pos{d.dots[0].point, d.dots[1].point};
  std::vector<OrderedConfig> cs{{pos[0], pos[1]}};
  for (const auto& phase : phases) {
    for (const Leg& leg : phase) pos[leg.black] = d.dots[leg.white].point;
    cs.push_back({pos[0], pos[1]});
  }
  return path_through(tree, cs, false, 0.0);
}

// Order preserving matching along an I diagram; sequential when the ends
// carry opposite colors (black nearest the white end moves first).
std::vector<std::vector<Leg>> i_motion(const Tree& tree, const HullDiagram& d,
                                       bool allow_sequential) {
  auto s = coords(tree, d);
  std::array<int, 2> bl{0, 1}, wh{2, 3};
  if (s[1] < s[0]) std::swap(bl[0], bl[1]);
  if (s[3] < s[2]) std::swap(wh[0], wh[1]);
  Leg lo{bl[0], wh[0]}, hi{bl[1], wh[1]};
  auto only = [&](int end, DotColor c) {
    for (int i : d.ends[end])
      if (d.dots[i].color != c) return false;
    return true;
  };
  if (allow_sequential) {
    if (only(0, DotColor::Black) && only(1, DotColor::White)) return {{hi}, {lo}};
    if (only(0, DotColor::White) && only(1, DotColor::Black)) return {{lo}, {hi}};
  }
  return {{lo, hi}};
}

std::vector<std::vector<Leg>> y_motion(const HullDiagram& d, ESet e) {
  const auto& br = d.branches.front();
  YShape s = y_shape(d);
  if (e == ESet::E3) {
    int b_in = black(s.inner) ? s.inner : s.outer;
    int w_in = black(s.inner) ? s.outer : s.inner;
    int b_out = -1, w_out = -1;
    for (int k = 0; k < 3; ++k) {
      if (k == s.doubled) continue;
      int dot = br.arms[k].dots.front();
      (black(dot) ? b_out : w_out) = dot;
    }
    return {{Leg{b_in, w_in}, Leg{b_out, w_out}}};
  }
  auto single = [&](int k) { return br.arms[k].dots.front(); };
  const int r = s.doubled;
  if (e == ESet::E1) {
    if (r == 1) return {{Leg{single(0), s.outer}}, {Leg{single(2), s.inner}}};
    if (r == 2) return {{Leg{single(1), s.outer}}, {Leg{single(0), s.inner}}};
    return {{Leg{s.inner, single(2)}}, {Leg{s.outer, single(1)}}};
  }
  if (r == 1) return {{Leg{s.inner, single(2)}}, {Leg{s.outer, single(0)}}};
  if (r == 2) return {{Leg{s.inner, single(0)}}, {Leg{s.outer, single(1)}}};
  return {{Leg{single(1), s.outer}}, {Leg{single(2), s.inner}}};
}

std::vector<std::vector<Leg>> x_motion(const HullDiagram& d) {
  const auto& br = d.branches.front();
  std::vector<int> bl, wh;  // by increasing arm number
  for (const auto& arm : br.arms) (black(arm.dots.front()) ? bl : wh).push_back(arm.dots.front());
  return {{Leg{bl[0], wh[0]}}, {Leg{bl[1], wh[1]}}};
}

std::vector<std::vector<Leg>> h_motion(const HullDiagram& d) {
  std::array<std::array<int, 2>, 2> at{};
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) at[k][j] = d.branches[k].arms[j].dots.front();
  bool same0 = black(at[0][0]) == black(at[0][1]);
  if (same0) {
    const auto& bl = black(at[0][0]) ? at[0] : at[1];
    const auto& wh = black(at[0][0]) ? at[1] : at[0];
    return {{Leg{bl[0], wh[0]}}, {Leg{bl[1], wh[1]}}};
  }
  auto pair = [&](const std::array<int, 2>& x) {
    return black(x[0]) ? Leg{x[0], x[1]} : Leg{x[1], x[0]};
  };
  return {{pair(at[0]), pair(at[1])}};
}

UnorderedPlanResult finish(const Tree& tree, UnorderedPlanResult r) {
  if (!r.timing) r.path = compile(tree, r.diagram, r.phases);
  r.rule_id = rule_of(r.eset);
  r.length = path_length(tree, r.path, Metric::L1);
  if (min_separation(tree, r.path) <= 0.0)
    throw InfeasibleError("internal error: planned unordered motion collides");
  return r;
}

}  // namespace

UnorderedPlanResult plan_unordered(const Tree& tree, const UnorderedConfig& a,
                                   const UnorderedConfig& b) {
  if (tree.is_interval())
    throw ShapeError("tree is an interval; use plan_interval");
  if (tree.is_y_graph()) throw ShapeError("tree is the Y graph; use plan_y");
  UnorderedPlanResult r;
  r.diagram = hull_classify(tree, a, b);
  r.eset = assign_eset(r.diagram);
  switch (r.diagram.type) {
    case HullType::I1:
    case HullType::I2:
    case HullType::I3: r.phases = i_motion(tree, r.diagram, true); break;
    case HullType::Y1:
    case HullType::Y2: r.phases = y_motion(r.diagram, r.eset); break;
    case HullType::X: r.phases = x_motion(r.diagram); break;
    case HullType::H: r.phases = h_motion(r.diagram); break;
  }
  return finish(tree, std::move(r));
}

UnorderedPlanResult plan_interval(const Tree& tree, const UnorderedConfig& a,
                                  const UnorderedConfig& b) {
  if (!tree.is_interval()) throw ShapeError("tree is not an interval");
  UnorderedPlanResult r;
  r.diagram = hull_classify(tree, a, b);
  r.eset = ESet::Single;
  r.phases = i_motion(tree, r.diagram, false);
  return finish(tree, std::move(r));
}

UnorderedPlanResult plan_y(const Tree& tree, const UnorderedConfig& a, const UnorderedConfig& b) {
  if (!tree.is_y_graph()) throw ShapeError("tree is not the Y graph");
  UnorderedPlanResult r;
  r.diagram = hull_classify(tree, a, b);
  r.eset = assign_eset_y(tree, r.diagram);
  const HullDiagram& d = r.diagram;
  if (d.is_i()) {
    r.phases = i_motion(tree, d, false);
    return finish(tree, std::move(r));
  }
  if (d.type == HullType::Y2 && y_mixed(d)) {
    r.phases = y_motion(d, ESet::E3);
    return finish(tree, std::move(r));
  }
  // Timed diagrams A (white doubled arm) and B (black doubled arm), with the
  // Y1 diagrams obtained by moving the inner dot to the vertex.
  const auto& br = d.branches.front();
  YShape s = y_shape(d);
  int dn = br.arms[s.doubled].arm_number;
  int on_next = arm_with_number(br, next3(dn)).dots.front();
  int on_prev = arm_with_number(br, prev3(dn)).dots.front();
  const PointOnTree pv = PointOnTree::at_vertex(br.vertex);
  auto depth = [&](int dot) { return distance(tree, pv, d.dots[dot].point); };
  YTiming tm;
  int w1, w2;
  if (!black(s.outer)) {
    tm.kind = YTimedKind::A;
    tm.point1 = on_prev;
    w1 = s.outer;
    tm.point2 = on_next;
    w2 = s.inner;
  } else {
    tm.kind = YTimedKind::B;
    tm.point1 = s.outer;
    w1 = on_next;
    tm.point2 = s.inner;
    w2 = on_prev;
  }
  tm.d1 = depth(tm.point1);
  tm.d3 = depth(w1);
  tm.d2 = depth(tm.point2);
  tm.d4 = depth(w2);
  tm.t0 = y_t0(tm.kind, tm.d1, tm.d2, tm.d3, tm.d4);
  tm.crossing = tm.d1 / (tm.d1 + tm.d3);
  r.phases = {{Leg{tm.point1, w1}, Leg{tm.point2, w2}}};

  const PointOnTree& b1 = d.dots[tm.point1].point;
  const PointOnTree& b2 = d.dots[tm.point2].point;
  const PointOnTree& e1 = d.dots[w1].point;
  const PointOnTree& e2 = d.dots[w2].point;
  auto config = [&](const PointOnTree& x1, const PointOnTree& x2) {
    return tm.point1 == 0 ? OrderedConfig{x1, x2} : OrderedConfig{x2, x1};
  };
  BiPath path;
  path.ordered = false;
  path.breakpoints.push_back({0.0, config(b1, b2)});
  if (tm.t0 > 0.0 && tm.t0 < 1.0) {
    PointOnTree mid = point_along(tree, b1, e1, tm.t0 * (tm.d1 + tm.d3));
    path.breakpoints.push_back({tm.t0, config(mid, pv)});
  }
  path.breakpoints.push_back({1.0, config(e1, e2)});
  r.path = refine(tree, path);
  r.timing = tm;
  return finish(tree, std::move(r));
}

UnorderedPlanResult plan_unordered_auto(const Tree& tree, const UnorderedConfig& a,
                                        const UnorderedConfig& b) {
  if (tree.is_interval()) return plan_interval(tree, a, b);
  if (tree.is_y_graph()) return plan_y(tree, a, b);
  return plan_unordered(tree, a, b);
}

}  // namespace geotree
