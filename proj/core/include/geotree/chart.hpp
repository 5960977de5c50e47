#pragma once

#include <array>
#include <optional>
#include <vector>

#include "geotree/config.hpp"
#include "geotree/tree.hpp"

namespace geotree {

// Planar chart for configurations in which each particle stays on two arms of
// a star. The x axis carries particle 1 (negative side = x_neg arm), the y
// axis carries particle 2. An empty slot means the half axis is unused.
struct Chart {
  std::optional<int> x_neg, x_pos, y_neg, y_pos;
  double eps = 0.0;
  friend bool operator==(const Chart&, const Chart&) = default;
};

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

enum class QuadrantShape { Band, DiamondEdge };

// Forbidden region of a chart. Quadrants are indexed 0..3 as I (+,+), II (-,+),
// III (-,-), IV (+,-). A Band quadrant holds both particles on one arm and
// forbids ||x|-|y|| < eps; a DiamondEdge quadrant forbids |x|+|y| < eps.
struct Obstacle {
  double eps = 0.0;
  std::array<QuadrantShape, 4> quadrant{};
  std::vector<PlanarPoint> corners;  // counterclockwise, starting at (eps,0)
};

enum class Winding { Any, CCW, CW };

struct PlanarPath {
  std::vector<PlanarPoint> points;
  double length = 0.0;
};

void check_chart(const Chart& chart);
Obstacle obstacle_of(const Chart& chart);

// x_neg/x_pos from the arms of a1/b1 and y_neg/y_pos from a2/b2. A particle
// whose endpoints share one arm leaves its positive slot empty.
Chart chart_of(const StarView& star, const OrderedConfig& a, const OrderedConfig& b, double eps);

// Give every empty slot a real arm: the lowest arm used nowhere else in the
// chart, or failing that the lowest arm different from the axis' other slot.
Chart fill_unused(const Chart& chart, int num_arms);

bool representable(const StarView& star, const Chart& chart, const OrderedConfig& c);
PlanarPoint embed(const StarView& star, const Chart& chart, const OrderedConfig& c);
OrderedConfig unembed(const StarView& star, const Chart& chart, const PlanarPoint& p);

// True when the point is outside the open forbidden region (tolerance tol).
bool point_free(const Obstacle& obs, const PlanarPoint& p, double tol = 1e-9);
// True when no point of the closed segment enters the open forbidden region.
bool segment_free(const Obstacle& obs, const PlanarPoint& p, const PlanarPoint& q,
                  double tol = 1e-9);

double polyline_length(const std::vector<PlanarPoint>& pts, Metric m);
// Total signed angle swept around the origin (positive = counterclockwise).
double winding_angle(const std::vector<PlanarPoint>& pts);

// Shortest obstacle-avoiding polyline from a to b bending only at the four
// obstacle corners, optionally restricted to one winding class. Returns
// nullopt when no such path exists (the obstacle disconnects a from b).
std::optional<PlanarPath> planar_geodesic(const Obstacle& obs, const PlanarPoint& a,
                                          const PlanarPoint& b, Metric m,
                                          Winding cls = Winding::Any);

// Configuration path realizing a planar polyline in a chart.
BiPath unembed_path(const StarView& star, const Chart& chart, const PlanarPath& path);

}  // namespace geotree
