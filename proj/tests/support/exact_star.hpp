#pragma once

#include "geotree/config.hpp"
#include "geotree/tree.hpp"

namespace geotree::testing {

// Exact shortest path length in the ordered eps-configuration space of a star.
// Geodesics there are chains of uniform motions that bend only at
// configurations with one particle at the center and the other at depth eps,
// so Dijkstra over the visibility graph on those configurations is exact.
double exact_star_distance(const StarView& star, double eps, const OrderedConfig& a,
                           const OrderedConfig& b, Metric m);

}  // namespace geotree::testing
