#pragma once

#include <cstddef>
#include <functional>
#include <tuple>
#include <vector>

#include "geotree/config.hpp"
#include "geotree/tree.hpp"

namespace geotree {

struct GridStep {
  int to = 0;
  int edge = 0;          // tree edge carrying the step
  double from_off = 0.0; // offsets on that edge
  double to_off = 0.0;
  double len = 0.0;
};

// Tree subdivided so that every edge is cut into equal pieces of length <= h.
struct Grid {
  double h = 0.0;
  std::vector<PointOnTree> points;
  std::vector<std::vector<GridStep>> steps;
  std::vector<int> vertex_point;  // grid index of each tree vertex

  int size() const { return static_cast<int>(points.size()); }
};

Grid discretize(const Tree& tree, double h);

// Nearest grid point and the distance to it.
std::pair<int, double> snap(const Tree& tree, const Grid& grid, const PointOnTree& p);
// The one or two grid points enclosing p, nearest first, with their distances.
std::vector<std::pair<int, double>> bracket(const Tree& tree, const Grid& grid,
                                            const PointOnTree& p);

struct OracleOptions {
  double h = 0.125;
  Metric metric = Metric::L2;
  bool ordered = true;
  double eps = 0.0;
  // Extra separation demanded at grid nodes (ordered case).
  double margin = 0.0;
  // Relax each edge also from the predecessor's parent when the straight
  // uniform motion between them is feasible (star trees, l2 only). This
  // removes the direction bias of the 8-neighbour stencil.
  bool any_angle = false;
  // Optional per-particle restriction on the points a particle may visit.
  std::function<bool(const PointOnTree&)> allow_p1, allow_p2;
};

struct OracleResult {
  double length = 0.0;
  double snap_error = 0.0;  // l1 distance moved when snapping both endpoints to feasible nodes
  std::size_t nodes = 0;    // product nodes reached
  std::size_t settled = 0;
  std::size_t relaxed = 0;
  double seconds = 0.0;
  std::vector<OrderedConfig> path;  // discrete path, endpoints snapped
};

OracleResult oracle_shortest(const Tree& tree, const OrderedConfig& a, const OrderedConfig& b,
                             const OracleOptions& opt);

// Reusable oracle for many queries on one tree and step.
class Oracle {
 public:
  Oracle(const Tree& tree, OracleOptions opt);
  OracleResult shortest(const OrderedConfig& a, const OrderedConfig& b) const;
  const Grid& grid() const { return grid_; }

 private:
  bool node_ok(int i, int j) const;
  std::tuple<int, int, double> snap_config(const OrderedConfig& c) const;
  bool step_ok(int i, const GridStep* si, int j, const GridStep* sj) const;
  bool straight_ok(int i0, int j0, int i1, int j1) const;
  double gdist(int i, int j) const { return table_[static_cast<std::size_t>(i) * n_ + j]; }

  Tree tree_;
  OracleOptions opt_;
  Grid grid_;
  int n_ = 0;
  std::vector<double> table_;        // grid point distances
  std::vector<char> allow1_, allow2_;
  // Star coordinates of grid points (any-angle mode).
  std::vector<int> arm_;
  std::vector<double> depth_;
};

}  // namespace geotree
