// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "fdecanc/models.hpp"
#include "fdecanc/network.hpp"
#include "fdecanc/optimizer.hpp"
#include "fdecanc/sichannel.hpp"

using namespace fdecanc;

namespace {

const FrequencyGrid kBand = FrequencyGrid::parse("890e6:910e6:101");

void BM_IdealTap(benchmark::State& state) {
  const IdealTapConfig cfg{-20.0, 0.3, 900e6, 12.0};
  for (auto _ : state) benchmark::DoNotOptimize(ideal_tap_response(cfg, kBand));
}
BENCHMARK(BM_IdealTap);

void BM_PcbCascade(benchmark::State& state) {
  const PcbTapConfig cfg{-6.0, 0.3, 1.5, 8.0};
  for (auto _ : state) benchmark::DoNotOptimize(pcb_bpf_response_abcd(cfg, {}, kBand));
}
BENCHMARK(BM_PcbCascade);

void BM_Objective(benchmark::State& state) {
  const auto model = CancellerModel::ideal();
  const auto h = synth_si_channel({}, kBand);
  const std::vector<TapKnobs> cfg(static_cast<std::size_t>(state.range(0)), TapKnobs{-20.0, 0.3, 900e6, 12.0});
  for (auto _ : state) benchmark::DoNotOptimize(residual_objective(h, model.evaluate(cfg, kBand)));
}
BENCHMARK(BM_Objective)->Arg(1)->Arg(4);

void BM_SolveContinuous(benchmark::State& state) {
  const auto model = CancellerModel::ideal();
  const auto h = synth_si_channel({}, kBand);
  const auto bounds = rfic_quantization().bounds();
  SolveOptions o;
  o.restarts = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_continuous(model, h, bounds, o, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_SolveContinuous)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_LocalSearch(benchmark::State& state) {
  const auto model = CancellerModel::ideal();
  const auto q = rfic_quantization();
  const auto h = synth_si_channel({}, kBand);
  const std::vector<TapKnobs> start{{-20.0, q.knobs[1].value(100), q.knobs[2].value(128), q.knobs[3].value(60)},
                                    {-30.0, q.knobs[1].value(10), q.knobs[2].value(90), q.knobs[3].value(20)}};
  for (auto _ : state) benchmark::DoNotOptimize(local_search(start, model, h, q));
}
BENCHMARK(BM_LocalSearch)->Unit(benchmark::kMillisecond);

void BM_Schedule(benchmark::State& state) {
  const auto inst = default_four_node_instance();
  for (auto _ : state) benchmark::DoNotOptimize(tdma_schedule_eval(inst.scenario, inst.schedule));
}
BENCHMARK(BM_Schedule);

}  // namespace

BENCHMARK_MAIN();
