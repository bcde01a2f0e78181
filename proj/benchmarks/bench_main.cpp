#include <benchmark/benchmark.h>

#include <string>

#include "oscprof/balance.hpp"
#include "oscprof/dde_sim.hpp"
#include "oscprof/describing.hpp"
#include "oscprof/network_io.hpp"
#include "oscprof/workflows.hpp"

namespace {

using namespace oscprof;

const Network& pentilator() {
  static const Network net =
      load_network(std::string(OSCPROF_CONFIG_DIR) + "/pentilator.net");
  return net;
}

void bm_describe_quadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(describe(Regulation::Repression, 2.0, 7.5, 3.0, 3.2));
  }
}
BENCHMARK(bm_describe_quadrature);

void bm_describe_limit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(describe_limit(Regulation::Repression, 2.0, 7.5, 3.0));
  }
}
BENCHMARK(bm_describe_limit);

void bm_frequency(benchmark::State& state) {
  const DimensionlessParams p = dimensionless(pentilator());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_frequency(p));
  }
}
BENCHMARK(bm_frequency);

void bm_frequency_heterogeneous(benchmark::State& state) {
  const Network& net = pentilator();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_frequency_heterogeneous(net));
  }
}
BENCHMARK(bm_frequency_heterogeneous);

void bm_bias_amplitude(benchmark::State& state) {
  const Network& net = pentilator();
  const double omega = solve_frequency(dimensionless(net));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_bias_amplitude(net, omega));
  }
}
BENCHMARK(bm_bias_amplitude)->Unit(benchmark::kMillisecond);

void bm_simulate(benchmark::State& state) {
  const Network& net = pentilator();
  const SimConfig cfg{0.02, 200.0, 0.5, {}, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(net, cfg));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(cfg.t_end / cfg.step));
}
BENCHMARK(bm_simulate)->Unit(benchmark::kMillisecond);

void bm_extract_profile(benchmark::State& state) {
  const Network& net = pentilator();
  // 2100 min keeps >= 11 whole cycles in the post-transient window that the
  // extractor insists on.
  static const TimeSeries ts = simulate(net, SimConfig{0.02, 2100.0, 0.5, {}, {}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_profile(ts, 0.5));
  }
}
BENCHMARK(bm_extract_profile)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
