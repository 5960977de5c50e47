#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "geotree/config.hpp"
#include "geotree/star_planner.hpp"
#include "geotree/tree.hpp"
#include "geotree/unordered.hpp"

namespace geotree::audit {

using Rng = std::mt19937_64;

// Arm uniform, depth uniform in [eps, arm length], infeasible pairs rejected.
OrderedConfig random_star_config(const StarView& star, double eps, Rng& rng);
// Edge uniform, offset uniform on the edge.
PointOnTree random_point(const Tree& tree, Rng& rng);
UnorderedConfig random_unordered(const Tree& tree, Rng& rng);
// Random attachment tree with at most max_leaves leaves and edge lengths
// uniform in [lo, hi]. Vertices of degree two may occur.
Tree random_tree(Rng& rng, int max_leaves = 12, double lo = 1.0, double hi = 5.0);

// One planned instance reduced to what the audits compare.
struct Planned {
  int rule_id = 0;
  std::string label;  // class name or diagram/E-set
  BiPath path;
  double length = 0.0;
};

Planned plan_ordered(const StarView& star, double eps, const OrderedConfig& a,
                     const OrderedConfig& b, Metric m);
Planned plan_unordered_any(const Tree& tree, const OrderedConfig& a, const OrderedConfig& b);

struct PartitionReport {
  long total = 0;
  long failures = 0;  // instances that raised instead of receiving a rule id
  std::map<int, long> rule_counts;
  std::map<std::string, long> label_counts;
};

PartitionReport partition_ordered(const StarView& star, double eps, Metric m, long n,
                                  std::uint64_t seed);
PartitionReport partition_unordered(const Tree& tree, long n, std::uint64_t seed);

struct ContinuityStep {
  double delta = 0.0;
  double config_distance = 0.0;  // distance from the limit instance
  double sup = 0.0;              // sup path distance to the limit path
  int rule_id = 0;
};

struct ContinuityScenario {
  std::string name;
  int limit_rule = 0;
  std::vector<ContinuityStep> steps;

  bool same_rule() const;
  bool bounded(double factor = 5.0) const;  // sup <= factor * config distance
  bool monotone() const;                    // sup strictly decreasing along the sequence
  bool pass() const { return same_rule() && bounded() && monotone(); }
};

// The boundary limits enumerated in the continuity arguments: the X2 tie
// sequence collapsing to an X1 switch on the three-arm star, Diagram A with
// d1 -> 0, and inner dots moving onto the vertex (Y graph Diagrams A and B,
// general-tree Y2 -> Y1 in E1 and E2).
std::vector<ContinuityScenario> proof_scenarios(const std::vector<double>& deltas);

struct SampledContinuity {
  long sequences = 0;
  long same_rule = 0;
  double max_ratio = 0.0;     // max sup / config distance over same-rule steps
  double median_ratio = 0.0;
};

// Random base instances, each perturbed by moving one source point a distance
// delta along the tree; only perturbations keeping the rule id are measured.
SampledContinuity sampled_continuity_ordered(const StarView& star, double eps, Metric m,
                                             long n, double delta, std::uint64_t seed);
SampledContinuity sampled_continuity_unordered(const Tree& tree, long n, double delta,
                                               std::uint64_t seed);

}  // namespace geotree::audit
