#pragma once

#include <string>
#include <vector>

#include "geotree/tree.hpp"

namespace geotree {

enum class Metric { L1, L2 };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& s);

struct OrderedConfig {
  PointOnTree p1, p2;
  friend bool operator==(const OrderedConfig&, const OrderedConfig&) = default;
};

// Unordered pair stored with p1 <= p2 in the canonical point order.
struct UnorderedConfig {
  PointOnTree p1, p2;

  static UnorderedConfig make(const PointOnTree& a, const PointOnTree& b);
  OrderedConfig as_ordered() const { return {p1, p2}; }
  friend bool operator==(const UnorderedConfig&, const UnorderedConfig&) = default;
};

double combine(double d1, double d2, Metric m);

double config_distance(const Tree& tree, const OrderedConfig& a, const OrderedConfig& b,
                       Metric m);
// Minimum over the two pairings.
double config_distance(const Tree& tree, const UnorderedConfig& a, const UnorderedConfig& b,
                       Metric m);

double separation(const Tree& tree, const OrderedConfig& c);
bool in_feps(const Tree& tree, const OrderedConfig& c, double eps);

struct Breakpoint {
  double t = 0.0;
  OrderedConfig c;
};

// Piecewise-uniform two particle trajectory. Between consecutive breakpoints
// each particle moves along its tree geodesic at constant speed.
struct BiPath {
  std::vector<Breakpoint> breakpoints;
  bool ordered = true;
  double eps = 0.0;

  const OrderedConfig& start() const { return breakpoints.front().c; }
  const OrderedConfig& end() const { return breakpoints.back().c; }
};

// Throws StructuralError if times are not 0 = t0 < ... < tm = 1 or the list is empty.
void check_well_formed(const Tree& tree, const BiPath& path);

// Path through the given configurations, timed proportionally to cumulative
// l1 arc length (sum of both particles' travel). Repeated configurations are
// dropped; a single configuration yields a constant path.
BiPath path_through(const Tree& tree, const std::vector<OrderedConfig>& configs, bool ordered,
                    double eps);

// Concatenation; the first path's end must equal the second's start. Times are
// reallocated proportionally to l1 arc length.
BiPath concat(const Tree& tree, const BiPath& a, const BiPath& b);

// Retime all breakpoints proportionally to l1 arc length.
BiPath retime_by_arclength(const Tree& tree, BiPath path);

BiPath reversed(const BiPath& path);
BiPath swap_particles(const BiPath& path);

OrderedConfig evaluate(const Tree& tree, const BiPath& path, double t);

// Insert breakpoints wherever a particle passes a vertex, so that within every
// segment each particle stays on one closed edge.
BiPath refine(const Tree& tree, const BiPath& path);

double path_length(const Tree& tree, const BiPath& path, Metric m);

// Exact minimum over t of the particle separation.
double min_separation(const Tree& tree, const BiPath& path);

// Deformation retraction of F(G,2) onto F_eps, one configuration at a time.
OrderedConfig retract_to_feps(const Tree& tree, const OrderedConfig& a, double eps);

// Sup over sampled times of d(g1(t),h1(t)) + d(g2(t),h2(t)); uses 256 uniform
// samples plus all breakpoint times. Unordered paths take the better pairing
// at each sample.
double path_sup_distance(const Tree& tree, const BiPath& g, const BiPath& h, int samples = 256);

}  // namespace geotree
