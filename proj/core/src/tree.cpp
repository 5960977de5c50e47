#include "geotree/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "geotree/errors.hpp"

namespace geotree {

namespace {

constexpr double kSnap = 1e-12;

std::string str(const char* what, int id) {
  std::ostringstream os;
  os << what << ' ' << id;
  return os.str();
}

}  // namespace

std::strong_ordering compare_points(const PointOnTree& a, const PointOnTree& b) {
  if (a.is_vertex() != b.is_vertex()) return a.is_vertex() ? std::strong_ordering::less
                                                           : std::strong_ordering::greater;
  if (a.is_vertex()) return a.vertex <=> b.vertex;
  if (a.edge != b.edge) return a.edge <=> b.edge;
  if (a.offset < b.offset) return std::strong_ordering::less;
  if (a.offset > b.offset) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const PointOnTree& p) {
  std::ostringstream os;
  if (p.is_vertex())
    os << "v" << p.vertex;
  else
    os << "e" << p.edge << "@" << p.offset;
  return os.str();
}

Tree::Tree(int num_vertices, std::vector<Edge> edges, std::vector<int> leaf_order,
           std::vector<std::vector<int>> cyclic_order)
    : edges_(std::move(edges)), leaf_order_(std::move(leaf_order)) {
  if (num_vertices < 1) throw StructuralError("tree needs at least one vertex");
  if (static_cast<int>(edges_.size()) != num_vertices - 1)
    throw StructuralError("a tree on n vertices has n-1 edges");
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  adj_.assign(num_vertices, {});
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    const Edge& e = edges_[i];
    if (e.id != i) throw StructuralError("edge ids must be 0..n-2");
    if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices || e.u == e.v)
      throw StructuralError(str("bad endpoints on edge", e.id));
    if (!(e.len > 0.0) || !std::isfinite(e.len))
      throw StructuralError(str("non-positive length on edge", e.id));
    adj_[e.u].push_back(e.id);
    adj_[e.v].push_back(e.id);
  }
  if (!cyclic_order.empty()) {
    if (static_cast<int>(cyclic_order.size()) != num_vertices)
      throw StructuralError("cyclic order must list every vertex");
    for (int v = 0; v < num_vertices; ++v) {
      auto want = adj_[v];
      auto got = cyclic_order[v];
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want != got) throw StructuralError(str("cyclic order does not match edges at vertex", v));
      adj_[v] = cyclic_order[v];
    }
  }

  // Root at 0, record parents, levels and weighted depths; this also checks connectivity.
  parent_.assign(num_vertices, -1);
  level_.assign(num_vertices, -1);
  depth_.assign(num_vertices, 0.0);
  std::deque<int> queue{0};
  level_[0] = 0;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int e : adj_[x]) {
      int y = other_end(e, x);
      if (level_[y] >= 0) continue;
      level_[y] = level_[x] + 1;
      parent_[y] = x;
      depth_[y] = depth_[x] + edges_[e].len;
      queue.push_back(y);
    }
  }
  for (int v = 0; v < num_vertices; ++v)
    if (level_[v] < 0) throw StructuralError("tree is not connected");

  leaf_number_.assign(num_vertices, 0);
  int leaves = 0;
  for (int v = 0; v < num_vertices; ++v)
    if (adj_[v].size() == 1) ++leaves;
  if (static_cast<int>(leaf_order_.size()) != leaves)
    throw StructuralError("leaf order must list every degree-1 vertex exactly once");
  for (int i = 0; i < leaves; ++i) {
    int v = leaf_order_[i];
    if (v < 0 || v >= num_vertices || adj_[v].size() != 1 || leaf_number_[v] != 0)
      throw StructuralError("leaf order must list every degree-1 vertex exactly once");
    leaf_number_[v] = i + 1;
  }
}

const Edge& Tree::edge(int e) const {
  if (e < 0 || e >= num_edges()) throw StructuralError(str("unknown edge", e));
  return edges_[e];
}

const std::vector<int>& Tree::incident(int v) const {
  if (v < 0 || v >= num_vertices()) throw StructuralError(str("unknown vertex", v));
  return adj_[v];
}

int Tree::other_end(int e, int v) const {
  const Edge& ed = edge(e);
  if (ed.u == v) return ed.v;
  if (ed.v == v) return ed.u;
  throw ArgumentError(str("vertex not on edge", e));
}

int Tree::edge_between(int x, int y) const {
  for (int e : incident(x))
    if (other_end(e, x) == y) return e;
  return -1;
}

int Tree::leaf_number(int v) const {
  incident(v);
  return leaf_number_[v];
}

int Tree::leaf_vertex(int number) const {
  if (number < 1 || number > num_leaves()) throw ArgumentError(str("unknown leaf number", number));
  return leaf_order_[number - 1];
}

PointOnTree Tree::point(int e, double offset) const {
  const Edge& ed = edge(e);
  if (!std::isfinite(offset) || offset < -kSnap || offset > ed.len + kSnap)
    throw StructuralError(str("offset outside edge", e));
  if (offset <= kSnap) return PointOnTree::at_vertex(ed.u);
  if (offset >= ed.len - kSnap) return PointOnTree::at_vertex(ed.v);
  return PointOnTree{-1, e, offset};
}

void Tree::validate(const PointOnTree& p) const {
  if (p.is_vertex()) {
    incident(p.vertex);
    return;
  }
  const Edge& ed = edge(p.edge);
  if (!(p.offset > 0.0 && p.offset < ed.len))
    throw StructuralError("edge point offsets must lie strictly inside the edge");
}

double Tree::offset_on(int e, const PointOnTree& p) const {
  const Edge& ed = edge(e);
  if (p.is_vertex()) {
    if (p.vertex == ed.u) return 0.0;
    if (p.vertex == ed.v) return ed.len;
  } else if (p.edge == e) {
    return p.offset;
  }
  throw ArgumentError(str("point is not on edge", e));
}

int Tree::common_edge(const PointOnTree& p, const PointOnTree& q) const {
  auto on = [&](int e, const PointOnTree& x) {
    const Edge& ed = edge(e);
    return x.is_vertex() ? (x.vertex == ed.u || x.vertex == ed.v) : x.edge == e;
  };
  if (!p.is_vertex()) return on(p.edge, q) ? p.edge : -1;
  if (!q.is_vertex()) return on(q.edge, p) ? q.edge : -1;
  if (p.vertex == q.vertex) return incident(p.vertex).empty() ? -1 : incident(p.vertex).front();
  return edge_between(p.vertex, q.vertex);
}

int Tree::lca(int x, int y) const {
  while (level_[x] > level_[y]) x = parent_[x];
  while (level_[y] > level_[x]) y = parent_[y];
  while (x != y) {
    x = parent_[x];
    y = parent_[y];
  }
  return x;
}

double Tree::vertex_distance(int x, int y) const {
  incident(x);
  incident(y);
  return depth_[x] + depth_[y] - 2.0 * depth_[lca(x, y)];
}

std::vector<int> Tree::vertex_path(int x, int y) const {
  incident(x);
  incident(y);
  int m = lca(x, y);
  std::vector<int> up, down;
  for (int v = x; v != m; v = parent_[v]) up.push_back(v);
  for (int v = y; v != m; v = parent_[v]) down.push_back(v);
  up.push_back(m);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

double Tree::min_edge_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) m = std::min(m, e.len);
  return m;
}

double Tree::total_length() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.len;
  return s;
}

int Tree::num_branch_vertices() const {
  int n = 0;
  for (const auto& a : adj_)
    if (a.size() >= 3) ++n;
  return n;
}

bool Tree::is_interval() const { return num_edges() >= 1 && num_branch_vertices() == 0; }

bool Tree::is_star() const { return num_branch_vertices() == 1; }

bool Tree::is_y_graph() const {
  if (num_branch_vertices() != 1) return false;
  for (const auto& a : adj_)
    if (a.size() >= 3) return a.size() == 3;
  return false;
}

namespace {

// (vertex, distance) pairs through which a path leaving p must pass.
struct Exit {
  int vertex;
  double d;
};

int exits(const Tree& t, const PointOnTree& p, Exit out[2]) {
  if (p.is_vertex()) {
    out[0] = {p.vertex, 0.0};
    return 1;
  }
  const Edge& e = t.edge(p.edge);
  out[0] = {e.u, p.offset};
  out[1] = {e.v, e.len - p.offset};
  return 2;
}

struct Route {
  Exit from, to;
  double length;
};

Route best_route(const Tree& t, const PointOnTree& p, const PointOnTree& q) {
  Exit ep[2], eq[2];
  int np = exits(t, p, ep), nq = exits(t, q, eq);
  Route best{ep[0], eq[0], std::numeric_limits<double>::infinity()};
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nq; ++j) {
      // Summed so that swapping p and q gives the same rounding.
      double len = (ep[i].d + eq[j].d) + t.vertex_distance(ep[i].vertex, eq[j].vertex);
      if (len < best.length) best = {ep[i], eq[j], len};
    }
  return best;
}

}  // namespace

double distance(const Tree& tree, const PointOnTree& p, const PointOnTree& q) {
  tree.validate(p);
  tree.validate(q);
  if (p == q) return 0.0;
  if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge) return std::abs(p.offset - q.offset);
  return best_route(tree, p, q).length;
}

std::vector<GeodesicStop> tree_geodesic(const Tree& tree, const PointOnTree& p,
                                        const PointOnTree& q) {
  tree.validate(p);
  tree.validate(q);
  std::vector<GeodesicStop> out{{p, 0.0}};
  if (p == q) return out;
  if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge) {
    out.push_back({q, std::abs(p.offset - q.offset)});
    return out;
  }
  Route r = best_route(tree, p, q);
  auto push = [&](const PointOnTree& x, double s) {
    if (x == out.back().point) return;
    out.push_back({x, s});
  };
  double s = r.from.d;
  int prev = -1;
  for (int v : tree.vertex_path(r.from.vertex, r.to.vertex)) {
    if (prev >= 0) s += tree.edge(tree.edge_between(prev, v)).len;
    push(PointOnTree::at_vertex(v), s);
    prev = v;
  }
  push(q, r.length);
  out.back().s = r.length;
  return out;
}

PointOnTree interpolate_on_edge(const Tree& tree, const PointOnTree& p, const PointOnTree& q,
                                double f) {
  if (f <= 0.0 || p == q) return p;
  if (f >= 1.0) return q;
  int e = tree.common_edge(p, q);
  if (e < 0) throw ArgumentError("points do not share an edge");
  double a = tree.offset_on(e, p), b = tree.offset_on(e, q);
  return tree.point(e, a + f * (b - a));
}

PointOnTree point_along(const Tree& tree, const PointOnTree& p, const PointOnTree& q,
                        double s) {
  auto stops = tree_geodesic(tree, p, q);
  if (s <= 0.0) return p;
  if (s >= stops.back().s) return q;
  for (size_t i = 0; i + 1 < stops.size(); ++i) {
    if (s <= stops[i + 1].s) {
      double span = stops[i + 1].s - stops[i].s;
      return interpolate_on_edge(tree, stops[i].point, stops[i + 1].point,
                                 span > 0.0 ? (s - stops[i].s) / span : 0.0);
    }
  }
  return q;
}

PointOnTree median(const Tree& tree, const PointOnTree& x1, const PointOnTree& x2,
                   const PointOnTree& x3) {
  double d12 = distance(tree, x1, x2), d13 = distance(tree, x1, x3),
         d23 = distance(tree, x2, x3);
  return point_along(tree, x1, x2, 0.5 * (d12 + d13 - d23));
}

int arm_number(const Tree& tree, int v, int e) {
  int w = tree.other_end(e, v);
  int best = std::numeric_limits<int>::max();
  std::vector<char> seen(tree.num_vertices(), 0);
  seen[v] = seen[w] = 1;
  std::deque<int> queue{w};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (tree.leaf_number(x) > 0) best = std::min(best, tree.leaf_number(x));
    for (int f : tree.incident(x)) {
      int y = tree.other_end(f, x);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return best;
}

int edge_toward(const Tree& tree, int v, const PointOnTree& x) {
  PointOnTree pv = PointOnTree::at_vertex(v);
  if (x == pv) return -1;
  auto stops = tree_geodesic(tree, pv, x);
  return tree.common_edge(pv, stops[1].point);
}

StarView::StarView(Tree tree) : tree_(std::move(tree)) {
  if (!tree_.is_star()) throw ShapeError("tree is not homeomorphic to a star");
  for (int v = 0; v < tree_.num_vertices(); ++v)
    if (tree_.degree(v) >= 3) center_ = v;
  arms_.assign(tree_.num_leaves(), {});
  edge_arm_.assign(tree_.num_edges(), 0);
  vertex_arm_.assign(tree_.num_vertices(), 0);
  for (int e0 : tree_.incident(center_)) {
    Arm arm;
    int prev = center_, e = e0;
    double depth = 0.0;
    while (true) {
      arm.edges.push_back(e);
      arm.vertices.push_back(prev);
      arm.start.push_back(depth);
      depth += tree_.edge(e).len;
      int next = tree_.other_end(e, prev);
      if (tree_.degree(next) == 1) {
        arm.length = depth;
        int number = tree_.leaf_number(next);
        for (int f : arm.edges) edge_arm_[f] = number;
        for (size_t i = 1; i < arm.vertices.size(); ++i) vertex_arm_[arm.vertices[i]] = number;
        vertex_arm_[next] = number;
        arms_[number - 1] = std::move(arm);
        break;
      }
      int f = tree_.incident(next)[0] == e ? tree_.incident(next)[1] : tree_.incident(next)[0];
      prev = next;
      e = f;
    }
  }
}

const StarView::Arm& StarView::arm(int a) const {
  if (a < 1 || a > num_arms()) throw ArgumentError(str("unknown arm", a));
  return arms_[a - 1];
}

double StarView::arm_length(int a) const { return arm(a).length; }

StarCoord StarView::coord(const PointOnTree& p) const {
  tree_.validate(p);
  if (p.is_vertex()) {
    if (p.vertex == center_) return {};
    int a = vertex_arm_[p.vertex];
    const Arm& ar = arm(a);
    for (size_t i = 0; i < ar.vertices.size(); ++i)
      if (ar.vertices[i] == p.vertex) return {a, ar.start[i]};
    return {a, ar.length};
  }
  int a = edge_arm_[p.edge];
  const Arm& ar = arm(a);
  for (size_t i = 0; i < ar.edges.size(); ++i) {
    if (ar.edges[i] != p.edge) continue;
    const Edge& e = tree_.edge(p.edge);
    double from_inner = e.u == ar.vertices[i] ? p.offset : e.len - p.offset;
    return {a, ar.start[i] + from_inner};
  }
  throw StructuralError("edge not found on its arm");
}

PointOnTree StarView::point(const StarCoord& c) const {
  if (c.arm == 0 || c.depth <= kSnap) {
    if (c.arm == 0 && c.depth != 0.0) throw ArgumentError("center coordinate must have depth 0");
    return PointOnTree::at_vertex(center_);
  }
  const Arm& ar = arm(c.arm);
  if (c.depth < 0.0 || c.depth > ar.length + kSnap) throw ArgumentError("depth outside arm");
  size_t i = 0;
  while (i + 1 < ar.edges.size() && ar.start[i + 1] <= c.depth) ++i;
  const Edge& e = tree_.edge(ar.edges[i]);
  double from_inner = std::min(c.depth - ar.start[i], e.len);
  return tree_.point(ar.edges[i], e.u == ar.vertices[i] ? from_inner : e.len - from_inner);
}

StarView make_star(const std::vector<double>& arm_lengths) {
  int k = static_cast<int>(arm_lengths.size());
  std::vector<Edge> edges;
  std::vector<int> leaves;
  for (int i = 0; i < k; ++i) {
    edges.push_back(Edge{i, 0, i + 1, arm_lengths[i]});
    leaves.push_back(i + 1);
  }
  return StarView(Tree(k + 1, std::move(edges), std::move(leaves)));
}

}  // namespace geotree
