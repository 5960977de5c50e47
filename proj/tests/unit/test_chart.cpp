#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "geotree/chart.hpp"
#include "geotree/errors.hpp"

namespace geotree {
namespace {

const double kSqrt2 = std::sqrt(2.0);

Chart diamond_chart(double eps) { return Chart{1, 3, 2, 4, eps}; }

double euclid(PlanarPoint p, PlanarPoint q) { return std::hypot(p.x - q.x, p.y - q.y); }

TEST(ChartOf, FollowsSourceAndTargetArms) {
  // a1 and a2 share arm 1, b1 is on arm 2 and b2 on arm 3.
  StarView star = make_star({10, 10, 10});
  OrderedConfig a{star.point(1, 5), star.point(1, 2)};
  OrderedConfig b{star.point(2, 4), star.point(3, 4)};
  Chart c = chart_of(star, a, b, 1.0);
  EXPECT_EQ(c.x_neg, 1);
  EXPECT_EQ(c.x_pos, 2);
  EXPECT_EQ(c.y_neg, 1);
  EXPECT_EQ(c.y_pos, 3);
}

TEST(ChartOf, SameEndpointsLeavePositiveSlotsEmpty) {
  StarView star = make_star({10, 10, 10});
  OrderedConfig a{star.point(1, 5), star.point(2, 2)};
  Chart c = chart_of(star, a, a, 1.0);
  EXPECT_EQ(c.x_neg, 1);
  EXPECT_FALSE(c.x_pos.has_value());
  EXPECT_EQ(c.y_neg, 2);
  EXPECT_FALSE(c.y_pos.has_value());
  Chart f = fill_unused(c, 3);
  EXPECT_EQ(f.x_pos, 3);
  EXPECT_EQ(f.y_pos, 1);
}

TEST(ChartOf, CenterTakesDestinationArm) {
  StarView star = make_star({10, 10, 10});
  OrderedConfig a{star.point(0, 0), star.point(2, 2)};
  OrderedConfig b{star.point(3, 4), star.point(1, 4)};
  Chart c = chart_of(star, a, b, 1.0);
  EXPECT_EQ(c.x_neg, 3);
  EXPECT_FALSE(c.x_pos.has_value());
}

TEST(Obstacle, OppositeSharedArmsGiveTwoBands) {
  StarView star = make_star({10, 10, 10, 10});
  OrderedConfig a{star.point(1, 2), star.point(2, 2)};
  OrderedConfig b{star.point(2, 5), star.point(1, 2)};
  Obstacle o = obstacle_of(chart_of(star, a, b, 1.0));
  EXPECT_EQ(o.quadrant[0], QuadrantShape::DiamondEdge);
  EXPECT_EQ(o.quadrant[1], QuadrantShape::Band);
  EXPECT_EQ(o.quadrant[2], QuadrantShape::DiamondEdge);
  EXPECT_EQ(o.quadrant[3], QuadrantShape::Band);
}

TEST(Obstacle, RejectsRepeatedArmOnOneAxis) {
  EXPECT_THROW(check_chart(Chart{1, 1, 2, 3, 1.0}), ArgumentError);
}

TEST(Embed, SignedDepths) {
  StarView star = make_star({10, 10, 10, 10});
  Chart c = diamond_chart(1.0);
  OrderedConfig q{star.point(1, 3), star.point(4, 2)};
  EXPECT_EQ(embed(star, c, q), (PlanarPoint{-3, 2}));
  EXPECT_EQ(unembed(star, c, PlanarPoint{-3, 2}), q);
  EXPECT_FALSE(representable(star, c, {star.point(2, 3), star.point(3, 3)}));
  EXPECT_THROW(embed(star, c, {star.point(2, 3), star.point(3, 3)}), DomainError);
}

// Random configurations in the chart's arms and outside the forbidden region.
OrderedConfig random_in_chart(const StarView& star, const Chart& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> depth(0.0, 10.0);
  std::bernoulli_distribution coin;
  for (;;) {
    OrderedConfig q{star.point(coin(rng) ? *c.x_neg : *c.x_pos, depth(rng)),
                    star.point(coin(rng) ? *c.y_neg : *c.y_pos, depth(rng))};
    if (separation(star.tree(), q) >= c.eps) return q;
  }
}

TEST(Embed, RoundTripAndIsometry) {
  StarView star = make_star({10, 10, 10});
  std::mt19937_64 rng(21);
  for (Chart c : {Chart{1, 2, 1, 3, 1.0}, Chart{1, 2, 2, 3, 1.0}, Chart{1, 2, 2, 1, 1.0}}) {
    for (int i = 0; i < 100; ++i) {
      OrderedConfig p = random_in_chart(star, c, rng), q = random_in_chart(star, c, rng);
      ASSERT_TRUE(representable(star, c, p));
      PlanarPoint e = embed(star, c, p);
      OrderedConfig back = unembed(star, c, e);
      EXPECT_NEAR(config_distance(star.tree(), back, p, Metric::L1), 0.0, 1e-12);
      EXPECT_NEAR(config_distance(star.tree(), p, q, Metric::L2), euclid(e, embed(star, c, q)),
                  1e-12);
      EXPECT_TRUE(point_free(obstacle_of(c), e));
    }
  }
}

TEST(PlanarGeodesic, DiamondTypeOne) {
  Obstacle o = obstacle_of(diamond_chart(2.0));
  auto p = planar_geodesic(o, {-1, -2}, {2, 5}, Metric::L2, Winding::CCW);
  ASSERT_TRUE(p.has_value());
  std::vector<PlanarPoint> want = {{-1, -2}, {0, -2}, {2, 0}, {2, 5}};
  EXPECT_EQ(p->points, want);
  EXPECT_NEAR(p->length, 1 + std::sqrt(8.0) + 5, 1e-12);
  auto q = planar_geodesic(o, {-1, -2}, {2, 5}, Metric::L1, Winding::CCW);
  EXPECT_NEAR(q->length, 10.0, 1e-12);
}

TEST(PlanarGeodesic, DiamondTypeTwo) {
  // The straight segment from (-2,0) to (2,5) keeps |x|+|y| >= 2, so the
  // clockwise geodesic bends only once. Checked directly below.
  Obstacle o = obstacle_of(diamond_chart(2.0));
  for (int i = 0; i <= 1000; ++i) {
    double s = i / 1000.0;
    double x = -2 + 4 * s, y = 5 * s;
    EXPECT_GE(std::abs(x) + std::abs(y), 2.0 - 1e-12);
  }
  auto p = planar_geodesic(o, {-1, -2}, {2, 5}, Metric::L2, Winding::CW);
  ASSERT_TRUE(p.has_value());
  std::vector<PlanarPoint> want = {{-1, -2}, {-2, 0}, {2, 5}};
  EXPECT_EQ(p->points, want);
  EXPECT_NEAR(p->length, std::sqrt(5.0) + std::sqrt(41.0), 1e-12);
  auto q = planar_geodesic(o, {-1, -2}, {2, 5}, Metric::L1, Winding::CW);
  EXPECT_NEAR(q->length, 12.0, 1e-12);
  auto any = planar_geodesic(o, {-1, -2}, {2, 5}, Metric::L2);
  EXPECT_NEAR(any->length, p->length, 1e-12);
}

TEST(PlanarGeodesic, UnobstructedIsStraight) {
  Obstacle o = obstacle_of(diamond_chart(1.0));
  auto p = planar_geodesic(o, {2, 1}, {5, 5}, Metric::L2);
  ASSERT_EQ(p->points.size(), 2u);
  EXPECT_DOUBLE_EQ(p->length, 5.0);
  EXPECT_DOUBLE_EQ(planar_geodesic(o, {2, 1}, {5, 5}, Metric::L1)->length, 7.0);
}

TEST(PlanarGeodesic, OppositeBandsDisconnect) {
  Obstacle o = obstacle_of(Chart{1, 2, 2, 1, 1.0});
  EXPECT_FALSE(planar_geodesic(o, {-3, -3}, {3, 3}, Metric::L2).has_value());
}

TEST(PlanarGeodesic, BandIsPassedThroughTheOtherQuadrants) {
  // Quadrant III is a band, so the path must leave it. Only the corners (0,2)
  // and (2,0) are needed: along (-5,-2)->(0,2) the band gap is 3-s and the
  // diamond sum is 3-s >= 2 past the axis, and along (2,0)->(-1,-4) the diamond
  // sum is 2+s and the band gap is 2+s. Wrapping all four corners is longer.
  Obstacle o = obstacle_of(Chart{1, 2, 1, 3, 2.0});
  ASSERT_EQ(o.quadrant[2], QuadrantShape::Band);
  for (int i = 0; i <= 1000; ++i) {
    double s = i / 1000.0;
    EXPECT_TRUE(point_free(o, {-5 + 5 * s, -2 + 4 * s}));
    EXPECT_TRUE(point_free(o, {2 - 3 * s, -4 * s}));
  }
  auto p = planar_geodesic(o, {-5, -2}, {-1, -4}, Metric::L2);
  ASSERT_TRUE(p.has_value());
  std::vector<PlanarPoint> want = {{-5, -2}, {0, 2}, {2, 0}, {-1, -4}};
  EXPECT_EQ(p->points, want);
  EXPECT_NEAR(p->length, std::sqrt(41.0) + std::sqrt(8.0) + 5, 1e-12);
  double wrap = std::sqrt(13.0) + 6 * kSqrt2 + std::sqrt(5.0);
  EXPECT_LT(p->length, wrap);
}

TEST(PlanarGeodesic, RejectsEndpointInsideObstacle) {
  Obstacle o = obstacle_of(diamond_chart(2.0));
  EXPECT_THROW(planar_geodesic(o, {0.5, 0.5}, {3, 3}, Metric::L2), InfeasibleError);
}

TEST(PlanarGeodesic, NoRandomPolylineIsShorter) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-6, 6);
  for (Chart c : {diamond_chart(2.0), Chart{1, 2, 1, 3, 2.0}, Chart{1, 2, 3, 2, 2.0}}) {
    Obstacle o = obstacle_of(c);
    int checked = 0;
    while (checked < 1000) {
      PlanarPoint a{u(rng), u(rng)}, b{u(rng), u(rng)};
      if (!point_free(o, a, 0) || !point_free(o, b, 0)) continue;
      auto best = planar_geodesic(o, a, b, Metric::L2);
      if (!best) continue;
      // Polyline through up to three random waypoints.
      std::vector<PlanarPoint> pts{a};
      int extra = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < extra; ++k) pts.push_back({u(rng), u(rng)});
      pts.push_back(b);
      bool ok = true;
      for (std::size_t k = 1; k < pts.size() && ok; ++k)
        ok = segment_free(o, pts[k - 1], pts[k], 0);
      if (!ok) continue;
      ++checked;
      EXPECT_LE(best->length, polyline_length(pts, Metric::L2) + 1e-9);
      for (std::size_t k = 1; k < best->points.size(); ++k)
        EXPECT_TRUE(segment_free(o, best->points[k - 1], best->points[k]));
    }
  }
}

TEST(PlanarGeodesic, WindingClassesSplitTheObstacle) {
  Obstacle o = obstacle_of(diamond_chart(2.0));
  auto ccw = planar_geodesic(o, {-1, -2}, {2, 5}, Metric::L2, Winding::CCW);
  auto cw = planar_geodesic(o, {-1, -2}, {2, 5}, Metric::L2, Winding::CW);
  EXPECT_GT(winding_angle(ccw->points), 0);
  EXPECT_LT(winding_angle(cw->points), 0);
}

TEST(UnembedPath, KeepsLength) {
  StarView star = make_star({10, 10, 10, 10});
  Chart c = diamond_chart(2.0);
  Obstacle o = obstacle_of(c);
  for (Winding w : {Winding::CCW, Winding::CW}) {
    for (Metric m : {Metric::L1, Metric::L2}) {
      auto p = planar_geodesic(o, {-1, -2}, {2, 5}, m, w);
      BiPath path = unembed_path(star, c, *p);
      EXPECT_NEAR(path_length(star.tree(), path, m), p->length, 1e-12);
      EXPECT_GE(min_separation(star.tree(), path), 2.0 - 1e-9);
      EXPECT_EQ(path.start(), (OrderedConfig{star.point(1, 1), star.point(2, 2)}));
      EXPECT_EQ(path.end(), (OrderedConfig{star.point(3, 2), star.point(4, 5)}));
    }
  }
}

}  // namespace
}  // namespace geotree
