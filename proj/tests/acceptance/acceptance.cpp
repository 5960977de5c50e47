// Acceptance suite: one test per criterion, each reported on a single
// PASS/FAIL line by the listener at the bottom of this file.
#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "audit.hpp"
#include "exact_star.hpp"
#include "geotree/oracle.hpp"
#include "geotree/star_planner.hpp"
#include "geotree/unordered.hpp"
#include "graph_oracle.hpp"

namespace geotree {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double type_length(const StarPlanResult& r, int particle, Metric m) {
  double best = INFINITY;
  for (const auto& c : r.all_candidates)
    if (c.particle == particle) best = std::min(best, c.length(m));
  return best;
}

// ---------------------------------------------------------------------------
// 1. Four-arm example: candidate lengths and choices.

TEST(Acceptance, Criterion1_FourArmExampleExact) {
  StarView s = make_star({10, 10, 10, 10});
  OrderedConfig a{s.point(1, 1), s.point(2, 2)};
  OrderedConfig b{s.point(3, 2), s.point(4, 5)};
  auto t0 = Clock::now();
  StarPlanResult l1 = plan_star(s, 2.0, a, b, Metric::L1);
  StarPlanResult l2 = plan_star(s, 2.0, a, b, Metric::L2);
  double elapsed = seconds_since(t0);

  EXPECT_NEAR(type_length(l1, 1, Metric::L1), 10.0, 1e-12);
  EXPECT_NEAR(type_length(l1, 2, Metric::L1), 12.0, 1e-12);
  EXPECT_NEAR(type_length(l2, 1, Metric::L2), 1 + std::sqrt(8.0) + 5, 1e-12);
  // The stated type-2 value bends at (0,2) as well as (-2,0); the straight
  // segment from (-2,0) to (2,5) already clears the obstacle.
  EXPECT_NEAR(type_length(l2, 2, Metric::L2), std::sqrt(5.0) + std::sqrt(8.0) + std::sqrt(13.0),
              1e-12)
      << "exact shortest type-2 length is sqrt(5)+sqrt(41) = "
      << testing::exact_star_distance(s, 2.0, a, b, Metric::L2);

  EXPECT_EQ(l1.chosen.particle, 1);
  EXPECT_NEAR(l1.chosen.len_l1, 10.0, 1e-12);
  EXPECT_NEAR(l1.chosen.len_l2, 1 + std::sqrt(8.0) + 5, 1e-12);
  EXPECT_EQ(l2.chosen.particle, 2);
  EXPECT_LT(elapsed, 1e-3);
}

// ---------------------------------------------------------------------------
// 2. Opposite-swap analogue: the two metrics prefer different types, and the
// oracle restricted to each type orders them the same way.

TEST(Acceptance, Criterion2_OppositeSwapAnalogue) {
  auto t0 = Clock::now();
  StarView s = make_star({10, 10, 10, 10});
  OrderedConfig a{s.point(1, 1), s.point(2, 2)};
  OrderedConfig b{s.point(2, 5), s.point(1, 2)};
  StarPlanResult l1 = plan_star(s, 2.0, a, b, Metric::L1);
  StarPlanResult l2 = plan_star(s, 2.0, a, b, Metric::L2);
  EXPECT_EQ(l1.cls.subtype, StarSubtype::X2MinusOpp);
  EXPECT_NE(l1.chosen.particle, l2.chosen.particle);

  auto empty_arm = [&](const PointOnTree& p) {
    int arm = s.coord(p).arm;
    return arm == 3 || arm == 4;
  };
  for (const StarPlanResult* r : {&l1, &l2}) {
    Metric m = r->metric;
    OracleOptions o;
    o.metric = m;
    o.h = 0.125;
    o.eps = 2.0;
    o.any_angle = m == Metric::L2;
    double free_len = oracle_shortest(s.tree(), a, b, o).length;
    EXPECT_LE(std::abs(free_len - r->chosen.length(m)), 0.5) << to_string(m);
    double by_type[3] = {0, 0, 0};
    for (int type : {1, 2}) {
      OracleOptions ot = o;
      // Only the passing particle may enter the empty arms.
      auto keep_out = [&](const PointOnTree& p) { return !empty_arm(p); };
      if (type == 1) ot.allow_p2 = keep_out;
      else ot.allow_p1 = keep_out;
      by_type[type] = oracle_shortest(s.tree(), a, b, ot).length;
    }
    double c1 = type_length(*r, 1, m), c2 = type_length(*r, 2, m);
    EXPECT_EQ(c1 < c2, by_type[1] < by_type[2]) << to_string(m);
    EXPECT_EQ(c1 > c2, by_type[1] > by_type[2]) << to_string(m);
  }
  EXPECT_LT(seconds_since(t0), 10.0);
}

// ---------------------------------------------------------------------------
// 3. Ordered planner against the discretized oracle.

TEST(Acceptance, Criterion3_OrderedOracleAgreement) {
  auto t0 = Clock::now();
  const double eps = 1.0, h = 1.0 / 16;
  double worst = 0.0;
  for (int k : {3, 4, 5}) {
    StarView s = make_star(std::vector<double>(k, 10.0));
    for (Metric m : {Metric::L1, Metric::L2}) {
      OracleOptions o;
      o.metric = m;
      o.h = h;
      o.eps = eps;
      o.any_angle = m == Metric::L2;
      Oracle oracle(s.tree(), o);
      audit::Rng rng(1000 + 10 * k + (m == Metric::L2));
      int bad = 0;
      for (int i = 0; i < 200; ++i) {
        OrderedConfig a = audit::random_star_config(s, eps, rng);
        OrderedConfig b = audit::random_star_config(s, eps, rng);
        double plan = plan_star(s, eps, a, b, m).chosen.length(m);
        double gap = std::abs(plan - oracle.shortest(a, b).length);
        worst = std::max(worst, gap);
        if (gap > 4 * h) ++bad;
      }
      EXPECT_EQ(bad, 0) << "k=" << k << " " << to_string(m);
    }
  }
  double elapsed = seconds_since(t0);
  std::printf("  worst |planner - oracle| = %.4f (bound %.4f), %.1f s\n", worst, 4 * h, elapsed);
  EXPECT_LT(elapsed, 120.0);
}

// ---------------------------------------------------------------------------
// 4. Unordered planner against the discretized oracle.

TEST(Acceptance, Criterion4_UnorderedOracleAgreement) {
  auto t0 = Clock::now();
  audit::Rng rng(4);
  double worst = 0.0;
  int count = 0;
  for (int tree_i = 0; tree_i < 10; ++tree_i) {
    Tree t = audit::random_tree(rng, 12, 1.0, 5.0);
    OracleOptions o;
    o.metric = Metric::L1;
    o.ordered = false;
    o.h = t.min_edge_length() / 16;
    Oracle oracle(t, o);
    for (int i = 0; i < 20; ++i, ++count) {
      UnorderedConfig a = audit::random_unordered(t, rng);
      UnorderedConfig b = audit::random_unordered(t, rng);
      double plan = plan_unordered_auto(t, a, b).length;
      double gap = std::abs(plan - oracle.shortest(a.as_ordered(), b.as_ordered()).length);
      worst = std::max(worst, gap / o.h);
      EXPECT_LE(gap, 4 * o.h) << "tree " << tree_i << " instance " << i;
    }
  }
  double elapsed = seconds_since(t0);
  std::printf("  %d instances, worst gap %.3f h, %.1f s\n", count, worst, elapsed);
  EXPECT_EQ(count, 200);
  EXPECT_LT(elapsed, 120.0);
}

// ---------------------------------------------------------------------------
// 5. Number of rule ids on each family.

void expect_partition(const audit::PartitionReport& r, long n, std::size_t ids,
                      const std::string& what) {
  EXPECT_EQ(r.total, n) << what;
  EXPECT_EQ(r.failures, 0) << what;
  EXPECT_EQ(r.rule_counts.size(), ids) << what;
  long sum = 0;
  for (auto [id, c] : r.rule_counts) sum += c;
  EXPECT_EQ(sum, n) << what;
  std::printf("  %-26s", what.c_str());
  for (auto [id, c] : r.rule_counts) std::printf(" %d:%ld", id, c);
  std::printf("\n");
}

TEST(Acceptance, Criterion5_PartitionCardinality) {
  const long n = 10000;
  for (int k : {3, 4, 5}) {
    StarView s = make_star(std::vector<double>(k, 10.0));
    for (Metric m : {Metric::L1, Metric::L2})
      expect_partition(audit::partition_ordered(s, 1.0, m, n, 50 + k), n, k == 3 ? 2 : 3,
                       "ordered k=" + std::to_string(k) + " " + to_string(m));
  }
  StarView y = make_star({4, 5, 6});
  expect_partition(audit::partition_unordered(y.tree(), n, 60), n, 2, "unordered Y graph");
  StarView five = make_star({3, 4, 5, 6, 7});
  expect_partition(audit::partition_unordered(five.tree(), n, 61), n, 3, "unordered 5-star");
  testing::FigureTree f = testing::figure_tree();
  expect_partition(audit::partition_unordered(f.tree, n, 62), n, 3, "unordered 8-leaf tree");
  Tree interval(3, {{0, 0, 1, 4.0}, {1, 1, 2, 6.0}}, {0, 2});
  expect_partition(audit::partition_unordered(interval, n, 63), n, 1, "unordered interval");
}

// ---------------------------------------------------------------------------
// 6. Cut locus detection on symmetric instances and their perturbations.

TEST(Acceptance, Criterion6_CutLocusDetection) {
  StarView s = make_star({10, 10, 10, 10});
  const double eps = 2.0;
  const Metric m = Metric::L2;

  // Four arms: relabeling (x,y) -> (y,x) in the chart swaps the two types.
  OrderedConfig a4{s.point(1, 3), s.point(2, 3)}, b4{s.point(3, 3), s.point(4, 3)};
  StarPlanResult x4 = plan_star(s, eps, a4, b4, m);
  EXPECT_EQ(x4.cls.name(), "X4_eq_l2");
  EXPECT_TRUE(x4.in_cut_locus);
  EXPECT_LE(std::abs(type_length(x4, 1, m) - type_length(x4, 2, m)), 1e-12);
  OrderedConfig b4p{s.point(3, 3.1), s.point(4, 3)};
  StarPlanResult x4p = plan_star(s, eps, a4, b4p, m);
  EXPECT_FALSE(x4p.in_cut_locus);
  EXPECT_EQ(x4p.cls.name(), "X4_n_l2");

  // Opposite swap: exchanging the arm labels swaps the types.
  OrderedConfig a2{s.point(1, 3), s.point(2, 3)}, b2{s.point(2, 3), s.point(1, 3)};
  StarPlanResult x2 = plan_star(s, eps, a2, b2, m);
  EXPECT_EQ(x2.cls.name(), "X2_eq_l2");
  EXPECT_TRUE(x2.in_cut_locus);
  EXPECT_LE(std::abs(type_length(x2, 1, m) - type_length(x2, 2, m)), 1e-12);
  OrderedConfig b2p{s.point(2, 3.1), s.point(1, 3)};
  StarPlanResult x2p = plan_star(s, eps, a2, b2p, m);
  EXPECT_EQ(x2p.cls.name(), "X2_n_l2");
  EXPECT_GT(std::abs(type_length(x2p, 1, m) - type_length(x2p, 2, m)), 1e-3);
  EXPECT_FALSE(x2p.in_cut_locus)
      << "with two equal empty arms the switch arm is not unique, so this instance "
         "stays in the cut locus (rule "
      << x2p.rule_id << ")";
}

// ---------------------------------------------------------------------------
// 7. Continuity at the boundary limits used in the proofs.

TEST(Acceptance, Criterion7_ContinuityScenarios) {
  const double eps = 1.0;
  auto scenarios = audit::proof_scenarios({eps / 10, eps / 100, eps / 1000});
  EXPECT_GE(scenarios.size(), 8u);
  for (const auto& sc : scenarios) {
    EXPECT_TRUE(sc.same_rule()) << sc.name;
    EXPECT_TRUE(sc.bounded(5.0)) << sc.name;
    EXPECT_TRUE(sc.monotone()) << sc.name;
    std::printf("  %-34s rule %d  sup/dist:", sc.name.c_str(), sc.limit_rule);
    for (const auto& st : sc.steps) std::printf(" %.3g", st.sup / st.config_distance);
    std::printf("\n");
  }
}

// ---------------------------------------------------------------------------
// 8. Timing of the second point in the Y graph Diagrams A and B.

TEST(Acceptance, Criterion8_YGraphTiming) {
  // Formula values for (d1,d2,d3,d4) = (1,1,2,3).
  const double crossing = 1.0 / (1.0 + 2.0);
  double ta = y_t0(YTimedKind::A, 1, 1, 2, 3);
  double tb = y_t0(YTimedKind::B, 1, 1, 2, 3);
  EXPECT_NEAR(ta, 0.5, 1e-12);
  EXPECT_NEAR(crossing, 1.0 / 3.0, 1e-12);
  EXPECT_GT(ta, crossing);  // point 2 reaches the vertex after point 1
  EXPECT_LT(tb, crossing);  // and before it in Diagram B

  StarView s = make_star({10, 10, 10});
  const Tree& t = s.tree();
  const PointOnTree center = s.point(0, 0);
  auto at_center = [&](const UnorderedPlanResult& r, int dot, double time) {
    OrderedConfig c = evaluate(t, r.path, time);
    return (dot == 0 ? c.p1 : c.p2) == center;
  };
  // Geometric Diagram A: whites on arm 1 at 3 and 2, blacks at depth 1 on arms 3 and 2.
  UnorderedPlanResult ra = plan_y(t, UnorderedConfig::make(s.point(3, 1), s.point(2, 1)),
                                  UnorderedConfig::make(s.point(1, 3), s.point(1, 2)));
  ASSERT_TRUE(ra.timing && ra.timing->kind == YTimedKind::A);
  EXPECT_NEAR(ra.timing->t0, y_t0(YTimedKind::A, 1, 1, 3, 2), 1e-12);
  EXPECT_TRUE(at_center(ra, ra.timing->point2, ra.timing->t0));
  EXPECT_TRUE(at_center(ra, ra.timing->point1, ra.timing->crossing));
  EXPECT_GT(ra.timing->t0, ra.timing->crossing);
  // Geometric Diagram B: blacks on arm 1 at 3 and 1, whites on arms 2 and 3.
  UnorderedPlanResult rb = plan_y(t, UnorderedConfig::make(s.point(1, 3), s.point(1, 1)),
                                  UnorderedConfig::make(s.point(2, 2), s.point(3, 3)));
  ASSERT_TRUE(rb.timing && rb.timing->kind == YTimedKind::B);
  EXPECT_TRUE(at_center(rb, rb.timing->point2, rb.timing->t0));
  EXPECT_TRUE(at_center(rb, rb.timing->point1, rb.timing->crossing));
  EXPECT_LT(rb.timing->t0, rb.timing->crossing);

  // Degenerate cases: the inner dot sits on the vertex (d4 = 0 in A, d2 = 0 in B).
  EXPECT_NEAR(y_t0(YTimedKind::A, 1, 1, 2, 0), 1.0, 1e-12);
  EXPECT_NEAR(y_t0(YTimedKind::B, 1, 0, 2, 3), 0.0, 1e-12);
  for (auto [a, b] : {std::pair{UnorderedConfig::make(s.point(3, 1), s.point(2, 1)),
                                UnorderedConfig::make(s.point(1, 3), center)},
                      std::pair{UnorderedConfig::make(s.point(1, 3), center),
                                UnorderedConfig::make(s.point(2, 2), s.point(3, 3))}}) {
    UnorderedPlanResult r = plan_y(t, a, b);
    ASSERT_TRUE(r.timing.has_value());
    BiPath uniform = path_through(t, {r.path.start(), r.path.end()}, false, 0.0);
    EXPECT_LE(path_sup_distance(t, r.path, uniform), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// 9. Property suites, 1000 cases each.

constexpr int kCases = 1000;

TEST(Acceptance, Criterion9_PropertySuites) {
  std::mt19937_64 rng(9);
  int failures = 0;
  auto check = [&](bool ok, const char* what) {
    if (!ok && failures++ < 10) ADD_FAILURE() << what;
  };

  // Metric axioms and the four-point condition.
  for (int i = 0; i < kCases; ++i) {
    Tree t = testing::random_tree(rng, 20);
    PointOnTree p = testing::random_point(t, rng), q = testing::random_point(t, rng),
                r = testing::random_point(t, rng), u = testing::random_point(t, rng);
    double pq = distance(t, p, q), qr = distance(t, q, r), pr = distance(t, p, r);
    check(pq == distance(t, q, p), "symmetry");
    check(distance(t, p, p) == 0.0 && (pq > 0) == !(p == q), "identity");
    check(pr <= pq + qr + 1e-9, "triangle inequality");
    check(std::abs(pq - testing::dijkstra_distance(t, p, q)) < 1e-9, "distance vs Dijkstra");
    double s[3] = {pq + distance(t, r, u), pr + distance(t, q, u), distance(t, p, u) + qr};
    std::sort(s, s + 3);
    check(s[2] - s[1] < 1e-9, "four-point condition");
  }

  // Ordered star planner: feasibility, reversal and particle swap.
  for (int i = 0; i < kCases; ++i) {
    int k = 3 + i % 3;
    Metric m = (i / 3) % 2 ? Metric::L2 : Metric::L1;
    StarView s = make_star(std::vector<double>(k, 10.0));
    OrderedConfig a = audit::random_star_config(s, 1.0, rng);
    OrderedConfig b = audit::random_star_config(s, 1.0, rng);
    StarPlanResult r = plan_star(s, 1.0, a, b, m);
    const BiPath& path = r.chosen.path;
    double len = r.chosen.length(m);
    check(min_separation(s.tree(), path) >= 1.0 - 1e-9, "ordered feasibility");
    check(path.start() == a && path.end() == b, "ordered endpoints");
    check(len >= config_distance(s.tree(), a, b, m) - 1e-9, "length above config distance");
    check(path_length(s.tree(), path, Metric::L1) >= path_length(s.tree(), path, Metric::L2) - 1e-9,
          "l1 above l2");
    BiPath back = reversed(path);
    check(std::abs(path_length(s.tree(), back, m) - len) < 1e-9 &&
              std::abs(min_separation(s.tree(), back) - min_separation(s.tree(), path)) < 1e-9,
          "path reversal");
    check(std::abs(plan_star(s, 1.0, b, a, m).chosen.length(m) - len) < 1e-9, "plan reversal");
    check(std::abs(plan_star(s, 1.0, {a.p2, a.p1}, {b.p2, b.p1}, m).chosen.length(m) - len) < 1e-9,
          "particle swap");
  }

  // Unordered planner: feasibility, reversal and label swap.
  for (int i = 0; i < kCases; ++i) {
    Tree t = audit::random_tree(rng, 8, 1.0, 5.0);
    UnorderedConfig a = audit::random_unordered(t, rng), b = audit::random_unordered(t, rng);
    UnorderedPlanResult r = plan_unordered_auto(t, a, b);
    check(min_separation(t, r.path) > 0.0, "unordered feasibility");
    check(testing::sampled_min_separation(t, r.path, 200) > 0.0, "unordered sampled feasibility");
    check(std::abs(plan_unordered_auto(t, b, a).length - r.length) < 1e-9, "unordered reversal");
    check(std::abs(path_length(t, reversed(r.path), Metric::L1) - r.length) < 1e-9,
          "unordered path reversal");
    check(std::abs(path_length(t, swap_particles(r.path), Metric::L1) - r.length) < 1e-9,
          "unordered label swap");
  }

  // On one-arm, agreeing two-arm, three-arm and the other disagreeing two-arm
  // classes, the l2 choice is also an l1 geodesic.
  const double h = 0.25;
  std::vector<StarView> stars;
  std::vector<Oracle> oracles;
  for (int k : {3, 4, 5}) {
    stars.push_back(make_star(std::vector<double>(k, 10.0)));
    OracleOptions o;
    o.metric = Metric::L1;
    o.h = h;
    o.eps = 1.0;
    oracles.emplace_back(stars.back().tree(), o);
  }
  int tested = 0;
  while (tested < kCases) {
    int idx = static_cast<int>(rng() % 3);
    const StarView& s = stars[idx];
    OrderedConfig a = audit::random_star_config(s, 1.0, rng);
    OrderedConfig b = audit::random_star_config(s, 1.0, rng);
    StarClass cls = classify(s, 1.0, a, b);
    if (cls.subtype == StarSubtype::X4 || cls.subtype == StarSubtype::X2MinusOpp) continue;
    ++tested;
    StarPlanResult r = plan_star(s, 1.0, a, b, Metric::L2);
    double l1 = path_length(s.tree(), r.chosen.path, Metric::L1);
    check(l1 <= oracles[idx].shortest(a, b).length + 4 * h, "l2 choice is an l1 geodesic");
    check(std::abs(l1 - testing::exact_star_distance(s, 1.0, a, b, Metric::L1)) < 1e-9,
          "l2 choice matches exact l1 distance");
  }
  EXPECT_EQ(failures, 0);
}

// Prints one line per criterion after its test finishes.
class CriterionLines : public ::testing::EmptyTestEventListener {
 public:
  void OnTestEnd(const ::testing::TestInfo& info) override {
    std::string name = info.name();
    auto cut = name.find('_');
    std::string number = name.substr(std::string("Criterion").size(), cut - 9);
    std::string label = name.substr(cut + 1);
    bool ok = info.result()->Passed();
    std::printf("criterion %s %-28s %s (%.2f s)\n", number.c_str(), label.c_str(),
                ok ? "PASS" : "FAIL", info.result()->elapsed_time() / 1000.0);
    (ok ? passed_ : failed_)++;
    std::fflush(stdout);
  }
  void OnTestProgramEnd(const ::testing::UnitTest&) override {
    std::printf("acceptance: %d passed, %d failed\n", passed_, failed_);
  }

 private:
  int passed_ = 0, failed_ = 0;
};

}  // namespace
}  // namespace geotree

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::UnitTest::GetInstance()->listeners().Append(new geotree::CriterionLines);
  return RUN_ALL_TESTS();
}
