#pragma once

#include <random>

#include "geotree/config.hpp"
#include "geotree/tree.hpp"

namespace geotree::testing {

// Distance by Dijkstra on the vertex graph with p and q spliced in as
// temporary nodes. Shares no code with the LCA based distance.
double dijkstra_distance(const Tree& tree, const PointOnTree& p, const PointOnTree& q);

// Minimum separation over n + 1 evenly spaced times.
double sampled_min_separation(const Tree& tree, const BiPath& path, int n = 10000);

// Random attachment tree on n vertices, edge lengths uniform in [lo, hi].
Tree random_tree(std::mt19937_64& rng, int n, double lo = 1.0, double hi = 5.0);
PointOnTree random_point(const Tree& tree, std::mt19937_64& rng);

// The tree drawn in the hull figure: leaves 1..8 clockwise from the bottom,
// a degree-4 vertex C, and the vertex E where arms 5 and 6 meet. Edge lengths
// are the drawing's Euclidean lengths.
struct FigureTree {
  Tree tree;
  int A, B, C, D, E;  // internal vertices
  int leaf[9];        // leaf[i] is the vertex numbered i
  PointOnTree on(int x, int y, double f) const;  // fraction f from vertex x toward y
};
FigureTree figure_tree();

}  // namespace geotree::testing
