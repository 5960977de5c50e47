#include "audit.hpp"

#include <algorithm>

#include "geotree/errors.hpp"

namespace geotree::audit {

OrderedConfig random_star_config(const StarView& star, double eps, Rng& rng) {
  std::uniform_int_distribution<int> arm(1, star.num_arms());
  for (int tries = 0; tries < 100000; ++tries) {
    int a1 = arm(rng), a2 = arm(rng);
    double d1 = std::uniform_real_distribution<double>(eps, star.arm_length(a1))(rng);
    double d2 = std::uniform_real_distribution<double>(eps, star.arm_length(a2))(rng);
    OrderedConfig c{star.point(a1, d1), star.point(a2, d2)};
    if (in_feps(star.tree(), c, eps)) return c;
  }
  throw InfeasibleError("could not sample a feasible configuration");
}

PointOnTree random_point(const Tree& tree, Rng& rng) {
  int e = std::uniform_int_distribution<int>(0, tree.num_edges() - 1)(rng);
  double off = std::uniform_real_distribution<double>(0.0, tree.edge(e).len)(rng);
  return tree.point(e, off);
}

UnorderedConfig random_unordered(const Tree& tree, Rng& rng) {
  for (;;) {
    PointOnTree x = random_point(tree, rng), y = random_point(tree, rng);
    if (!(x == y)) return UnorderedConfig::make(x, y);
  }
}

Tree random_tree(Rng& rng, int max_leaves, double lo, double hi) {
  if (max_leaves < 2) throw ArgumentError("a tree needs at least two leaves");
  std::uniform_real_distribution<double> len(lo, hi);
  for (;;) {
    int n = std::uniform_int_distribution<int>(3, 2 * max_leaves - 2)(rng);
    std::vector<Edge> edges;
    std::vector<int> deg(n, 0);
    for (int v = 1; v < n; ++v) {
      int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
      edges.push_back(Edge{v - 1, u, v, len(rng)});
      ++deg[u];
      ++deg[v];
    }
    std::vector<int> leaves;
    for (int v = 0; v < n; ++v)
      if (deg[v] == 1) leaves.push_back(v);
    if (static_cast<int>(leaves.size()) <= max_leaves) return Tree(n, edges, leaves);
  }
}

Planned plan_ordered(const StarView& star, double eps, const OrderedConfig& a,
                     const OrderedConfig& b, Metric m) {
  auto r = plan_star(star, eps, a, b, m);
  return Planned{r.rule_id, r.cls.name(), r.chosen.path, r.chosen.length(m)};
}

Planned plan_unordered_any(const Tree& tree, const OrderedConfig& a, const OrderedConfig& b) {
  auto r = plan_unordered_auto(tree, UnorderedConfig::make(a.p1, a.p2),
                               UnorderedConfig::make(b.p1, b.p2));
  return Planned{r.rule_id, to_string(r.diagram.type) + "/" + to_string(r.eset), r.path,
                 r.length};
}

namespace {

void tally(PartitionReport& rep, const std::function<Planned()>& plan) {
  ++rep.total;
  try {
    Planned p = plan();
    ++rep.rule_counts[p.rule_id];
    ++rep.label_counts[p.label];
  } catch (const Error&) {
    ++rep.failures;
  }
}

}  // namespace

PartitionReport partition_ordered(const StarView& star, double eps, Metric m, long n,
                                  std::uint64_t seed) {
  Rng rng(seed);
  PartitionReport rep;
  for (long i = 0; i < n; ++i) {
    OrderedConfig a = random_star_config(star, eps, rng);
    OrderedConfig b = random_star_config(star, eps, rng);
    tally(rep, [&] { return plan_ordered(star, eps, a, b, m); });
  }
  return rep;
}

PartitionReport partition_unordered(const Tree& tree, long n, std::uint64_t seed) {
  Rng rng(seed);
  PartitionReport rep;
  for (long i = 0; i < n; ++i) {
    UnorderedConfig a = random_unordered(tree, rng), b = random_unordered(tree, rng);
    tally(rep, [&] { return plan_unordered_any(tree, a.as_ordered(), b.as_ordered()); });
  }
  return rep;
}

bool ContinuityScenario::same_rule() const {
  return std::all_of(steps.begin(), steps.end(),
                     [&](const ContinuityStep& s) { return s.rule_id == limit_rule; });
}

bool ContinuityScenario::bounded(double factor) const {
  return std::all_of(steps.begin(), steps.end(), [&](const ContinuityStep& s) {
    return s.sup <= factor * s.config_distance + 1e-12;
  });
}

bool ContinuityScenario::monotone() const {
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (!(steps[i].sup < steps[i - 1].sup || steps[i].sup == 0.0)) return false;
  return true;
}

namespace {

struct Pair {
  OrderedConfig a, b;
};

using Planner = std::function<Planned(const Pair&)>;
using Distance = std::function<double(const Pair&, const Pair&)>;

ContinuityScenario run(const std::string& name, const Tree& tree, const Planner& plan,
                       const Distance& dist, const Pair& limit,
                       const std::function<Pair(double)>& seq,
                       const std::vector<double>& deltas) {
  ContinuityScenario sc;
  sc.name = name;
  Planned lim = plan(limit);
  sc.limit_rule = lim.rule_id;
  for (double d : deltas) {
    Pair p = seq(d);
    Planned q = plan(p);
    sc.steps.push_back({d, dist(p, limit), path_sup_distance(tree, lim.path, q.path), q.rule_id});
  }
  return sc;
}

}  // namespace

std::vector<ContinuityScenario> proof_scenarios(const std::vector<double>& deltas) {
  std::vector<ContinuityScenario> out;

  // Three-arm star: a2 and b1 approach the center along one arm, a1 and b2
  // sit symmetrically on arm 1, so every instance of the sequence is an
  // equal-length X2 tie and the limit is an X1 switch.
  {
    StarView star = make_star({10.0, 10.0, 10.0});
    const Tree& t = star.tree();
    const double eps = 1.0;
    PointOnTree c = star.point(0, 0.0), top = star.point(1, 5.0);
    Distance dist = [&](const Pair& p, const Pair& q) {
      return config_distance(t, p.a, q.a, Metric::L1) + config_distance(t, p.b, q.b, Metric::L1);
    };
    for (Metric m : {Metric::L2, Metric::L1})
      for (int arm : {3, 2}) {
        Planner plan = [&, m](const Pair& p) { return plan_ordered(star, eps, p.a, p.b, m); };
        auto seq = [&, arm](double d) {
          PointOnTree x = star.point(arm, d / 2.0);
          return Pair{{top, x}, {x, top}};
        };
        out.push_back(run("x2_tie_to_x1_arm" + std::to_string(arm) + "_" + to_string(m), t, plan,
                          dist, Pair{{top, c}, {c, top}}, seq, deltas));
      }
  }

  auto unordered_dist = [](const Tree& t) {
    return Distance([&t](const Pair& p, const Pair& q) {
      auto u = [](const OrderedConfig& c) { return UnorderedConfig::make(c.p1, c.p2); };
      return config_distance(t, u(p.a), u(q.a), Metric::L1) +
             config_distance(t, u(p.b), u(q.b), Metric::L1);
    });
  };

  // Y graph, whites doubled on arm 1 (Diagram A) or blacks doubled (Diagram B).
  {
    StarView star = make_star({10.0, 10.0, 10.0});
    const Tree& t = star.tree();
    Planner plan = [&](const Pair& p) { return plan_unordered_any(t, p.a, p.b); };
    Distance dist = unordered_dist(t);
    auto P = [&](int arm, double d) { return star.point(arm, d); };
    out.push_back(run(
        "y_graph_A_d1_to_0", t, plan, dist, Pair{{P(0, 0), P(2, 3)}, {P(1, 2), P(1, 5)}},
        [&](double d) { return Pair{{P(3, d), P(2, 3)}, {P(1, 2), P(1, 5)}}; }, deltas));
    out.push_back(run(
        "y_graph_A_inner_to_vertex", t, plan, dist, Pair{{P(3, 2), P(2, 3)}, {P(0, 0), P(1, 5)}},
        [&](double d) { return Pair{{P(3, 2), P(2, 3)}, {P(1, d), P(1, 5)}}; }, deltas));
    out.push_back(run(
        "y_graph_B_inner_to_vertex", t, plan, dist, Pair{{P(0, 0), P(1, 5)}, {P(2, 3), P(3, 2)}},
        [&](double d) { return Pair{{P(1, d), P(1, 5)}, {P(2, 3), P(3, 2)}}; }, deltas));
  }

  // General tree: Y2 diagrams of E1 and E2 whose inner dot moves onto the vertex.
  {
    StarView star = make_star({10.0, 10.0, 10.0, 10.0});
    const Tree& t = star.tree();
    Planner plan = [&](const Pair& p) { return plan_unordered_any(t, p.a, p.b); };
    Distance dist = unordered_dist(t);
    for (const char* set : {"E1", "E2"})
      for (int doubled = 1; doubled <= 3; ++doubled) {
        bool black_pair = (std::string(set) == "E1") == (doubled == 1);
        int s1 = doubled == 1 ? 2 : 1, s2 = doubled == 3 ? 2 : 3;
        auto make = [&, doubled, s1, s2, black_pair](double d) {
          OrderedConfig pair{star.point(doubled, d), star.point(doubled, 4.0)};
          OrderedConfig singles{star.point(s1, 3.0), star.point(s2, 6.0)};
          return black_pair ? Pair{pair, singles} : Pair{singles, pair};
        };
        out.push_back(run(std::string("general_") + set + "_doubled_arm" +
                              std::to_string(doubled) + "_inner_to_vertex",
                          t, plan, dist, make(0.0), make, deltas));
      }
  }
  return out;
}

namespace {

// Moves p a distance delta toward a random leaf, if the leaf is far enough.
bool nudge(const Tree& tree, const PointOnTree& p, double delta, Rng& rng, PointOnTree& out) {
  const auto& leaves = tree.leaf_order();
  int start = std::uniform_int_distribution<int>(0, static_cast<int>(leaves.size()) - 1)(rng);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    PointOnTree leaf = PointOnTree::at_vertex(leaves[(start + i) % leaves.size()]);
    if (distance(tree, p, leaf) > delta) {
      out = point_along(tree, p, leaf, delta);
      return true;
    }
  }
  return false;
}

SampledContinuity summarize(long sequences, std::vector<double> ratios) {
  SampledContinuity s;
  s.sequences = sequences;
  s.same_rule = static_cast<long>(ratios.size());
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    s.max_ratio = ratios.back();
    s.median_ratio = ratios[ratios.size() / 2];
  }
  return s;
}

}  // namespace

SampledContinuity sampled_continuity_ordered(const StarView& star, double eps, Metric m,
                                             long n, double delta, std::uint64_t seed) {
  Rng rng(seed);
  const Tree& t = star.tree();
  std::vector<double> ratios;
  for (long i = 0; i < n; ++i) {
    OrderedConfig a = random_star_config(star, eps, rng);
    OrderedConfig b = random_star_config(star, eps, rng);
    OrderedConfig a2 = a;
    if (!nudge(t, a.p1, delta, rng, a2.p1) || !in_feps(t, a2, eps)) continue;
    Planned p = plan_ordered(star, eps, a, b, m), q = plan_ordered(star, eps, a2, b, m);
    if (p.rule_id != q.rule_id) continue;
    ratios.push_back(path_sup_distance(t, p.path, q.path) / distance(t, a.p1, a2.p1));
  }
  return summarize(n, std::move(ratios));
}

SampledContinuity sampled_continuity_unordered(const Tree& tree, long n, double delta,
                                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> ratios;
  for (long i = 0; i < n; ++i) {
    UnorderedConfig a = random_unordered(tree, rng), b = random_unordered(tree, rng);
    OrderedConfig a2 = a.as_ordered();
    if (!nudge(tree, a.p1, delta, rng, a2.p1) || a2.p1 == a2.p2) continue;
    Planned p = plan_unordered_any(tree, a.as_ordered(), b.as_ordered());
    Planned q = plan_unordered_any(tree, a2, b.as_ordered());
    if (p.rule_id != q.rule_id) continue;
    ratios.push_back(path_sup_distance(tree, p.path, q.path) / distance(tree, a.p1, a2.p1));
  }
  return summarize(n, std::move(ratios));
}

}  // namespace geotree::audit
