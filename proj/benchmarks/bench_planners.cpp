#include <benchmark/benchmark.h>

#include <vector>

#include "audit.hpp"
#include "geotree/oracle.hpp"
#include "geotree/star_planner.hpp"
#include "geotree/unordered.hpp"

namespace {

using namespace geotree;

void BM_Distance(benchmark::State& state) {
  audit::Rng rng(1);
  Tree t = audit::random_tree(rng, static_cast<int>(state.range(0)));
  std::vector<PointOnTree> pts;
  for (int i = 0; i < 256; ++i) pts.push_back(audit::random_point(t, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance(t, pts[i % 256], pts[(i * 7 + 3) % 256]));
    ++i;
  }
}
BENCHMARK(BM_Distance)->Arg(12)->Arg(100);

void BM_PlanStarExample(benchmark::State& state) {
  StarView s = make_star({10, 10, 10, 10});
  OrderedConfig a{s.point(1, 1), s.point(2, 2)}, b{s.point(3, 2), s.point(4, 5)};
  Metric m = state.range(0) ? Metric::L2 : Metric::L1;
  for (auto _ : state) benchmark::DoNotOptimize(plan_star(s, 2.0, a, b, m));
}
BENCHMARK(BM_PlanStarExample)->Arg(0)->Arg(1);

void BM_PlanStarRandom(benchmark::State& state) {
  StarView s = make_star(std::vector<double>(state.range(0), 10.0));
  audit::Rng rng(2);
  std::vector<OrderedConfig> cs;
  for (int i = 0; i < 512; ++i) cs.push_back(audit::random_star_config(s, 1.0, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_star(s, 1.0, cs[i % 512], cs[(i + 1) % 512], Metric::L2));
    ++i;
  }
}
BENCHMARK(BM_PlanStarRandom)->Arg(3)->Arg(5)->Arg(8);

void BM_PlanUnordered(benchmark::State& state) {
  audit::Rng rng(3);
  Tree t = audit::random_tree(rng, static_cast<int>(state.range(0)));
  std::vector<UnorderedConfig> cs;
  for (int i = 0; i < 512; ++i) cs.push_back(audit::random_unordered(t, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_unordered_auto(t, cs[i % 512], cs[(i + 1) % 512]));
    ++i;
  }
}
BENCHMARK(BM_PlanUnordered)->Arg(6)->Arg(12);

void BM_OracleOrdered(benchmark::State& state) {
  StarView s = make_star({10, 10, 10, 10});
  OracleOptions o;
  o.metric = Metric::L2;
  o.eps = 2.0;
  o.h = 1.0 / state.range(0);
  o.any_angle = true;
  Oracle oracle(s.tree(), o);
  OrderedConfig a{s.point(1, 1), s.point(2, 2)}, b{s.point(3, 2), s.point(4, 5)};
  for (auto _ : state) benchmark::DoNotOptimize(oracle.shortest(a, b));
}
BENCHMARK(BM_OracleOrdered)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
