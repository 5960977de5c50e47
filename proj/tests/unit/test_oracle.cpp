#include <gtest/gtest.h>

#include <cmath>

#include "exact_star.hpp"
#include "geotree/errors.hpp"
#include "geotree/oracle.hpp"
#include "geotree/star_planner.hpp"
#include "graph_oracle.hpp"

namespace geotree {
namespace {

struct FourArm {
  StarView star = make_star({10, 10, 10, 10});
  OrderedConfig a{star.point(1, 1), star.point(2, 2)};
  OrderedConfig b{star.point(3, 2), star.point(4, 5)};
};

OracleOptions ordered(Metric m, double h, double eps) {
  OracleOptions o;
  o.metric = m;
  o.h = h;
  o.eps = eps;
  return o;
}

TEST(Discretize, SingleEdge) {
  Tree t(2, {{0, 0, 1, 10.0}}, {0, 1});
  Grid g = discretize(t, 2.0);
  EXPECT_EQ(g.size(), 6);
}

TEST(Discretize, ThreeArmStar) {
  StarView s = make_star({10, 10, 10});
  Grid g = discretize(s.tree(), 1.0);
  EXPECT_EQ(g.size(), 31);
}

TEST(Discretize, StepsAreShortAndSymmetric) {
  std::mt19937_64 rng(41);
  Tree t = testing::random_tree(rng, 12);
  double h = t.min_edge_length() / 3;
  Grid g = discretize(t, h);
  for (int i = 0; i < g.size(); ++i)
    for (const auto& s : g.steps[i]) {
      EXPECT_LE(s.len, h + 1e-12);
      EXPECT_NEAR(s.len, distance(t, g.points[i], g.points[s.to]), 1e-12);
      bool back = false;
      for (const auto& r : g.steps[s.to]) back |= r.to == i;
      EXPECT_TRUE(back);
    }
  for (int v = 0; v < t.num_vertices(); ++v)
    EXPECT_EQ(g.points[g.vertex_point[v]], PointOnTree::at_vertex(v));
}

TEST(Discretize, RejectsLargeStep) {
  StarView s = make_star({10, 10, 10});
  EXPECT_THROW(discretize(s.tree(), 6.0), ArgumentError);
  EXPECT_THROW(discretize(s.tree(), 0.0), ArgumentError);
}

TEST(Snap, NearestGridPoint) {
  StarView s = make_star({10, 10, 10});
  Grid g = discretize(s.tree(), 1.0);
  auto [i, d] = snap(s.tree(), g, s.point(2, 3.3));
  EXPECT_NEAR(d, 0.3, 1e-12);
  EXPECT_EQ(g.points[i], s.point(2, 3));
  EXPECT_EQ(bracket(s.tree(), g, s.point(2, 3.3)).size(), 2u);
  auto on_grid = bracket(s.tree(), g, s.point(2, 3));
  EXPECT_EQ(on_grid.front().second, 0.0);
  EXPECT_EQ(bracket(s.tree(), g, s.point(0, 0)).size(), 1u);
}

TEST(OracleShortest, SameEndpointsIsZero) {
  FourArm x;
  OracleResult r = oracle_shortest(x.star.tree(), x.a, x.a, ordered(Metric::L2, 0.5, 2.0));
  EXPECT_EQ(r.length, 0.0);
}

TEST(OracleShortest, FourArmExampleL1Converges) {
  FourArm x;
  double prev = 1e9;
  for (double h : {0.5, 0.25, 0.125}) {
    OracleResult r = oracle_shortest(x.star.tree(), x.a, x.b, ordered(Metric::L1, h, 2.0));
    EXPECT_GE(r.length, 10.0 - 1e-9);
    EXPECT_LE(r.length, 11.0);
    EXPECT_LE(r.length, prev + 1e-9);
    prev = r.length;
  }
  EXPECT_NEAR(prev, 10.0, 1e-9);
}

TEST(OracleShortest, FourArmExampleL2Converges) {
  FourArm x;
  double exact = testing::exact_star_distance(x.star, 2.0, x.a, x.b, Metric::L2);
  double prev = 1e9;
  for (double h : {0.5, 0.25, 0.125}) {
    OracleResult r = oracle_shortest(x.star.tree(), x.a, x.b, ordered(Metric::L2, h, 2.0));
    EXPECT_GE(r.length, exact - 1e-9);
    EXPECT_LE(r.length, prev + 1e-9);
    prev = r.length;
  }
  EXPECT_LT(prev - exact, 0.5);
}

TEST(OracleShortest, AnyAngleTightensL2) {
  FourArm x;
  double exact = testing::exact_star_distance(x.star, 2.0, x.a, x.b, Metric::L2);
  OracleOptions o = ordered(Metric::L2, 0.25, 2.0);
  double grid = oracle_shortest(x.star.tree(), x.a, x.b, o).length;
  o.any_angle = true;
  double any = oracle_shortest(x.star.tree(), x.a, x.b, o).length;
  EXPECT_LE(any, grid + 1e-9);
  EXPECT_GE(any, exact - 1e-9);
  EXPECT_LT(any - exact, 4 * o.h);
}

TEST(OracleShortest, DiscretePathIsFeasible) {
  FourArm x;
  OracleResult r = oracle_shortest(x.star.tree(), x.a, x.b, ordered(Metric::L2, 0.25, 2.0));
  ASSERT_GE(r.path.size(), 2u);
  BiPath p = path_through(x.star.tree(), r.path, true, 2.0);
  EXPECT_GE(min_separation(x.star.tree(), p), 2.0 - 1e-9);
  EXPECT_NEAR(path_length(x.star.tree(), p, Metric::L2), r.length, 1e-9);
}

TEST(OracleShortest, PlannerIsNeverLonger) {
  StarView s = make_star({6, 6, 6, 6});
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> arm(1, 4);
  std::uniform_int_distribution<int> step(2, 24);
  for (Metric m : {Metric::L1, Metric::L2}) {
    Oracle oracle(s.tree(), ordered(m, 0.25, 1.0));
    for (int i = 0; i < 20; ++i) {
      // Depths on the grid so no snapping is needed.
      auto pick = [&] {
        for (;;) {
          OrderedConfig c{s.point(arm(rng), 0.25 * step(rng)), s.point(arm(rng), 0.25 * step(rng))};
          if (separation(s.tree(), c) >= 1.0) return c;
        }
      };
      OrderedConfig a = pick(), b = pick();
      OracleResult o = oracle.shortest(a, b);
      EXPECT_EQ(o.snap_error, 0.0);
      double plan = plan_star(s, 1.0, a, b, m).chosen.length(m);
      EXPECT_LE(plan, o.length + 1e-9);
      EXPECT_LE(o.length - plan, 4 * 0.25);
    }
  }
}

TEST(OracleShortest, UnorderedCanSwapPlaces) {
  StarView s = make_star({4, 4, 4});
  OracleOptions o;
  o.metric = Metric::L1;
  o.ordered = false;
  o.h = 0.5;
  OrderedConfig a{s.point(1, 2), s.point(2, 2)};
  OrderedConfig b{s.point(2, 2), s.point(1, 2)};
  EXPECT_EQ(oracle_shortest(s.tree(), a, b, o).length, 0.0);
}

TEST(OracleShortest, RestrictionsForbidArms) {
  FourArm x;
  OracleOptions o = ordered(Metric::L1, 0.25, 2.0);
  const StarView& star = x.star;
  // Particle 1 may not use arm 4 and particle 2 may not use arm 3: both
  // still reach their goals, so the length cannot drop.
  double free_len = oracle_shortest(star.tree(), x.a, x.b, o).length;
  o.allow_p1 = [&](const PointOnTree& p) { return star.coord(p).arm != 4; };
  o.allow_p2 = [&](const PointOnTree& p) { return star.coord(p).arm != 3; };
  EXPECT_GE(oracle_shortest(star.tree(), x.a, x.b, o).length, free_len - 1e-9);
}

TEST(OracleOptions, Validation) {
  StarView s = make_star({4, 4, 4});
  OracleOptions o;
  o.eps = 0.0;
  EXPECT_THROW(Oracle(s.tree(), o), ArgumentError);
  o.ordered = false;
  o.metric = Metric::L2;
  EXPECT_THROW(Oracle(s.tree(), o), ArgumentError);
  o = ordered(Metric::L1, 0.5, 1.0);
  o.any_angle = true;
  EXPECT_THROW(Oracle(s.tree(), o), ArgumentError);
}

TEST(OracleShortest, SnapsToNearbyFeasibleNodes) {
  StarView s = make_star({4, 4, 4});
  OracleOptions o = ordered(Metric::L1, 0.5, 1.0);
  OrderedConfig a{s.point(1, 0.6), s.point(2, 0.6)};
  OrderedConfig b{s.point(1, 2), s.point(2, 2)};
  OracleResult r = oracle_shortest(s.tree(), a, b, o);
  EXPECT_GT(r.snap_error, 0.0);
  EXPECT_GE(separation(s.tree(), r.path.front()), 1.0);
}

TEST(OracleShortest, InfeasibleEndpoint) {
  // No pair of grid points around the start is 1.5 apart.
  StarView s = make_star({4, 4, 4});
  OracleOptions o = ordered(Metric::L1, 0.5, 1.5);
  OrderedConfig bad{s.point(1, 0.1), s.point(2, 0.1)};
  OrderedConfig good{s.point(1, 2), s.point(2, 2)};
  EXPECT_THROW(oracle_shortest(s.tree(), bad, good, o), InfeasibleError);
}

}  // namespace
}  // namespace geotree
