#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geotree/config.hpp"
#include "geotree/tree.hpp"

namespace geotree {

enum class HullType { Y1, Y2, X, H, I1, I2, I3 };
enum class DotColor { Black, White };
// E1..E3 for general trees, E1'/E2' for the Y graph, Single for intervals.
enum class ESet { E1, E2, E3, E1Prime, E2Prime, Single };

std::string to_string(HullType t);
std::string to_string(DotColor c);
std::string to_string(ESet e);

// Dots 0,1 are the black source points a.p1, a.p2; dots 2,3 the white targets b.p1, b.p2.
struct Dot {
  PointOnTree point;
  DotColor color = DotColor::Black;
};

struct HullArm {
  int edge = -1;        // first edge leaving the branch vertex
  int arm_number = 0;
  std::vector<int> dots;  // ordered by distance from the vertex
};

struct HullBranch {
  int vertex = -1;
  std::vector<HullArm> arms;  // arms holding dots, by increasing arm number
  std::vector<int> at_vertex;  // dots sitting on the vertex itself
};

struct HullDiagram {
  HullType type = HullType::I3;
  std::array<Dot, 4> dots;
  // One branch for Y and X diagrams, two for H, none for I.
  std::vector<HullBranch> branches;

  // I diagrams: the dots at each end of the segment, the tree branch vertices
  // strictly inside it, and the endpoint arm numbers seen from the reference vertex.
  std::array<std::vector<int>, 2> ends;
  std::vector<int> interior_vertices;
  int reference_vertex = -1;
  std::array<int, 2> end_arm_numbers{0, 0};

  // A black and a white dot share a tree branch vertex.
  bool near_boundary = false;

  bool is_y() const { return type == HullType::Y1 || type == HullType::Y2; }
  bool is_i() const { return type == HullType::I1 || type == HullType::I2 || type == HullType::I3; }
};

HullDiagram hull_classify(const Tree& tree, const UnorderedConfig& a, const UnorderedConfig& b);

// Partition for trees that are neither intervals nor the Y graph.
ESet assign_eset(const HullDiagram& d);
// Partition for the Y graph.
ESet assign_eset_y(const Tree& tree, const HullDiagram& d);

// One black dot moving to one white dot.
struct Leg {
  int black = 0;  // 0 or 1
  int white = 2;  // 2 or 3
};

// The two timed diagrams of the Y graph rule.
enum class YTimedKind { A, B };

struct YTiming {
  YTimedKind kind = YTimedKind::A;
  double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
  int point1 = 0;  // black dot moving uniformly over [0,1]
  int point2 = 1;  // black dot reaching the vertex at t0
  double t0 = 0.0;
  double crossing = 0.0;  // time at which point 1 passes the vertex
};

double y_t0(YTimedKind kind, double d1, double d2, double d3, double d4);

struct UnorderedPlanResult {
  HullDiagram diagram;
  ESet eset = ESet::Single;
  int rule_id = 0;
  // Motion as consecutive phases; the legs of one phase run simultaneously.
  std::vector<std::vector<Leg>> phases;
  std::optional<YTiming> timing;  // set for the timed Y graph diagrams
  BiPath path;
  double length = 0.0;  // l1
};

// General trees (not an interval, not the Y graph).
UnorderedPlanResult plan_unordered(const Tree& tree, const UnorderedConfig& a,
                                   const UnorderedConfig& b);
UnorderedPlanResult plan_interval(const Tree& tree, const UnorderedConfig& a,
                                  const UnorderedConfig& b);
UnorderedPlanResult plan_y(const Tree& tree, const UnorderedConfig& a, const UnorderedConfig& b);
// Picks the planner matching the tree's shape.
UnorderedPlanResult plan_unordered_auto(const Tree& tree, const UnorderedConfig& a,
                                        const UnorderedConfig& b);

}  // namespace geotree
