#include <benchmark/benchmark.h>

#include "ckso/flow.hpp"
#include "ckso/generators.hpp"
#include "ckso/lp.hpp"
#include "ckso/oracle.hpp"
#include "ckso/skeleton.hpp"
#include "ckso/solver.hpp"
#include "ckso/thresholding.hpp"

using namespace ckso;

namespace {

MetricInstance bench_instance(int clients, int facilities, std::uint64_t seed) {
  RandomSpec spec;
  spec.num_clients = clients;
  spec.num_facilities = facilities;
  spec.k = std::min<std::int64_t>(4, facilities);
  spec.p = clients / 2 + 1;
  spec.cap_max = 6;
  spec.seed = seed;
  return gen_random(spec);
}

void BM_SolvePipeline(benchmark::State& state) {
  auto inst = bench_instance(static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(1)), 1234);
  SolveOptions opts;
  opts.record_report = false;
  for (auto _ : state) {
    auto out = solve_metric(inst, opts);
    benchmark::DoNotOptimize(out.report.feasible);
  }
}
BENCHMARK(BM_SolvePipeline)->Args({10, 4})->Args({20, 8})->Args({40, 10});

void BM_ExactOracle(benchmark::State& state) {
  auto inst = bench_instance(static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(1)), 99);
  for (auto _ : state) {
    auto out = exact_opt(inst);
    benchmark::DoNotOptimize(out.feasible);
  }
}
BENCHMARK(BM_ExactOracle)->Args({12, 6})->Args({20, 8});

void BM_LPFeasible(benchmark::State& state) {
  auto inst = bench_instance(static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(1)), 7);
  auto taus = candidate_thresholds(inst);
  GraphInstance g = graph_at_threshold(inst, taus.values[taus.values.size() / 2]);
  auto cands = skeleton_candidates(g, g.k);
  LPModel m = build_lp(g, cands.empty() ? std::vector<int>{} : cands.back().facilities,
                       g.k, g.p, true);
  for (auto _ : state) {
    auto f = lp_feasible(m);
    benchmark::DoNotOptimize(f.feasible);
  }
}
BENCHMARK(BM_LPFeasible)->Args({20, 8})->Args({40, 12});

void BM_MaxFlow(benchmark::State& state) {
  Rng rng(5);
  const int n = static_cast<int>(state.range(0));
  std::vector<std::tuple<int, int, std::int64_t>> arcs;
  for (int i = 0; i < 6 * n; ++i) {
    int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n));
    if (a == b || b == 0 || a == n - 1) continue;
    arcs.push_back({a, b, rng.range(1, 50)});
  }
  for (auto _ : state) {
    FlowNetwork net(n, 0, n - 1);
    for (const auto& [a, b, c] : arcs) net.add_arc(a, b, c);
    benchmark::DoNotOptimize(net.max_flow());
  }
}
BENCHMARK(BM_MaxFlow)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
