#include <benchmark/benchmark.h>

#include "bbcpt/cpt.hpp"
#include "bbcpt/stats.hpp"
#include "../tests/support.hpp"

using namespace bbcpt;
using namespace bbcpt::testing;

static void probe_rate(benchmark::State &st, bool parallel) {
  auto M = group(Family::Sp, 6, 5);
  Rng rng(1);
  ProbeSetup s = prepare_probe(M.group, Probe::EvenOrder, 5, rng);
  u64 seed = 0;
  for (auto _ : st) {
    auto r = parallel ? measure_rate(M.group, s, 5000, ++seed) : measure_rate_serial(M.group, s, 5000, ++seed);
    benchmark::DoNotOptimize(r.successes);
  }
  st.SetItemsProcessed(st.iterations() * 5000);
}
BENCHMARK_CAPTURE(probe_rate, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(probe_rate, serial, false)->Unit(benchmark::kMillisecond);

static void construct(benchmark::State &st, Family f, unsigned d) {
  auto M = group(f, d, 5);
  u64 seed = 0;
  for (auto _ : st) {
    CPTSystem sys = construct_cpt(M.group, d, ++seed);
    st.counters["mults"] = double(sys.mults);
  }
}
BENCHMARK_CAPTURE(construct, sl4, Family::SL, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(construct, sp6, Family::Sp, 6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(construct, omega8plus, Family::OmegaPlus, 8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
