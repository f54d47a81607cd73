#include <benchmark/benchmark.h>

#include <map>

#include "geoecc/distributed.hpp"
#include "geoecc/eccentricity.hpp"
#include "geoecc/netgen.hpp"
#include "geoecc/netgraph.hpp"

using namespace geoecc;

namespace {

const LocalizedNetwork& network(double L) {
  static std::map<double, LocalizedNetwork> cache;
  auto it = cache.find(L);
  if (it == cache.end()) {
    GenParams gp;
    gp.L = L;
    gp.model = SinrModel{1.6, 2.24};
    it = cache.emplace(L, generate(gp, 1)).first;
  }
  return it->second;
}

void all_pairs(benchmark::State& st, bool parallel) {
  const auto& net = network(static_cast<double>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(parallel ? all_pairs_parallel(net.graph) : all_pairs_serial(net.graph));
  st.counters["n"] = net.size();
}

void links(benchmark::State& st, bool parallel) {
  const auto& net = network(static_cast<double>(st.range(0)));
  const LinkModel m = SinrModel{1.6, 2.24};
  for (auto _ : st)
    benchmark::DoNotOptimize(parallel ? sample_links(net.true_positions, m, 7)
                                      : sample_links_serial(net.true_positions, m, 7));
  st.counters["n"] = net.size();
}

void requirements(benchmark::State& st, bool parallel) {
  const auto& net = network(static_cast<double>(st.range(0)));
  const auto sub = build_apparent_subdivision(net);
  const HopDistances dist(net.graph);
  for (auto _ : st) benchmark::DoNotOptimize(edge_requirements(sub, net.graph, dist, parallel));
  st.counters["n"] = net.size();
}

void protocol(benchmark::State& st) {
  const auto& net = network(static_cast<double>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(run_full_protocol(net, 3));
  st.counters["n"] = net.size();
}

}  // namespace

BENCHMARK_CAPTURE(all_pairs, serial, false)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(all_pairs, parallel, true)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(links, serial, false)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(links, parallel, true)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(requirements, serial, false)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(requirements, parallel, true)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(protocol)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
