#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geotree/config.hpp"
#include "geotree/tree.hpp"
#include "geotree/unordered.hpp"

namespace geotree::svg {

struct Xy {
  double x = 0.0, y = 0.0;
};

// Radial drawing: the root is a vertex of maximal degree, leaves are spread
// clockwise in depth-first order and each vertex sits at its tree distance
// from the root.
struct Layout {
  std::vector<Xy> vertex;
  Xy at(const Tree& tree, const PointOnTree& p) const;
};

Layout layout_tree(const Tree& tree);

// Tree with the start (filled) and goal (hollow) configurations, particle 1
// as a circle and particle 2 as a square, and the traces of an optional path.
std::string render_instance(const Tree& tree, const OrderedConfig& a, const OrderedConfig& b,
                            const std::optional<BiPath>& path, const std::string& title);

// Convex hull of the four dots drawn over the tree, black and white dots, and
// the arm numbers at each branch vertex.
std::string render_hull(const Tree& tree, const HullDiagram& d, const std::string& title);

// Representation plane of an ordered star instance: axes labelled by arm,
// the forbidden region and the representable part of the path.
std::string render_plane(const StarView& star, double eps, const OrderedConfig& a,
                         const OrderedConfig& b, const std::optional<BiPath>& path,
                         const std::string& title);

}  // namespace geotree::svg
