#pragma once

#include <compare>
#include <string>
#include <vector>

namespace geotree {

struct Edge {
  int id = 0;
  int u = 0;
  int v = 0;
  double len = 0.0;
};

// A robot position: either a vertex or an interior point of an edge.
// Offsets are measured from the edge's u endpoint and are kept strictly
// inside (0, len); use Tree::point() to build canonical edge points.
struct PointOnTree {
  int vertex = -1;
  int edge = -1;
  double offset = 0.0;

  static PointOnTree at_vertex(int v) { return PointOnTree{v, -1, 0.0}; }
  bool is_vertex() const { return vertex >= 0; }

  friend bool operator==(const PointOnTree&, const PointOnTree&) = default;
};

// Total order on canonical encodings: vertices first, then edge points.
std::strong_ordering compare_points(const PointOnTree& a, const PointOnTree& b);
std::string to_string(const PointOnTree& p);

// Finite metric tree with an embedding (cyclic order at each vertex) and a
// user supplied numbering 1..k of its degree-1 vertices.
class Tree {
 public:
  Tree() = default;
  // cyclic_order may be empty, in which case the input edge order is used.
  Tree(int num_vertices, std::vector<Edge> edges, std::vector<int> leaf_order,
       std::vector<std::vector<int>> cyclic_order = {});

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_leaves() const { return static_cast<int>(leaf_order_.size()); }

  const Edge& edge(int e) const;
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& incident(int v) const;
  int degree(int v) const { return static_cast<int>(incident(v).size()); }
  int other_end(int e, int v) const;
  // Edge joining adjacent vertices x and y, or -1.
  int edge_between(int x, int y) const;

  // 1..k for degree-1 vertices, 0 otherwise.
  int leaf_number(int v) const;
  int leaf_vertex(int number) const;
  const std::vector<int>& leaf_order() const { return leaf_order_; }

  // Canonical point at the given offset from edge e's u endpoint. Offsets
  // within 1e-12 of an endpoint snap to the vertex.
  PointOnTree point(int e, double offset) const;
  void validate(const PointOnTree& p) const;
  // Offset of p measured from e's u endpoint; p must lie on the closed edge.
  double offset_on(int e, const PointOnTree& p) const;
  // Edge whose closure contains both points, or -1.
  int common_edge(const PointOnTree& p, const PointOnTree& q) const;

  double vertex_distance(int x, int y) const;
  std::vector<int> vertex_path(int x, int y) const;

  double min_edge_length() const;
  double total_length() const;

  // Shape predicates, up to subdivision of edges.
  int num_branch_vertices() const;
  bool is_interval() const;
  bool is_star() const;
  bool is_y_graph() const;

 private:
  int lca(int x, int y) const;

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> leaf_order_;
  std::vector<int> leaf_number_;
  std::vector<int> parent_;
  std::vector<int> level_;
  std::vector<double> depth_;
};

double distance(const Tree& tree, const PointOnTree& p, const PointOnTree& q);

struct GeodesicStop {
  PointOnTree point;
  double s = 0.0;  // cumulative distance from the start
};

// Breakpoints of the unique tree path from p to q, one at every traversed vertex.
std::vector<GeodesicStop> tree_geodesic(const Tree& tree, const PointOnTree& p,
                                        const PointOnTree& q);

// Point at distance s from p along the tree path to q (s clamped to the path).
PointOnTree point_along(const Tree& tree, const PointOnTree& p, const PointOnTree& q,
                        double s);

// Point at fraction f in [0,1] of the way from p to q, where both lie on one closed edge.
PointOnTree interpolate_on_edge(const Tree& tree, const PointOnTree& p, const PointOnTree& q,
                                double f);

PointOnTree median(const Tree& tree, const PointOnTree& x1, const PointOnTree& x2,
                   const PointOnTree& x3);

// Smallest leaf number in the component of tree - {v} that contains edge e.
int arm_number(const Tree& tree, int v, int e);

// First edge on the path from vertex v to x, or -1 when x is v itself.
int edge_toward(const Tree& tree, int v, const PointOnTree& x);

// Star graph coordinates. arm is a leaf number (1..k); arm 0 is the center.
struct StarCoord {
  int arm = 0;
  double depth = 0.0;
  bool is_center() const { return arm == 0; }
  friend bool operator==(const StarCoord&, const StarCoord&) = default;
};

// Arm/depth view of a tree homeomorphic to a star with k >= 3 arms. Arms are
// indexed by the leaf number of their leaf.
class StarView {
 public:
  explicit StarView(Tree tree);

  const Tree& tree() const { return tree_; }
  int center() const { return center_; }
  int num_arms() const { return static_cast<int>(arms_.size()); }
  double arm_length(int arm) const;

  StarCoord coord(const PointOnTree& p) const;
  PointOnTree point(const StarCoord& c) const;
  PointOnTree point(int arm, double depth) const { return point(StarCoord{arm, depth}); }

 private:
  struct Arm {
    std::vector<int> edges;        // from the center outward
    std::vector<int> vertices;     // vertices[i] is the inner end of edges[i]
    std::vector<double> start;     // depth of vertices[i]
    double length = 0.0;
  };
  const Arm& arm(int a) const;

  Tree tree_;
  int center_ = -1;
  std::vector<Arm> arms_;
  std::vector<int> edge_arm_;
  std::vector<int> vertex_arm_;
};

StarView make_star(const std::vector<double>& arm_lengths);

}  // namespace geotree
