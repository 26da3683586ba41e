// Copyright 2026 The drawdown-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ddk/jump.hpp"
#include "ddk/laws.hpp"
#include "ddk/mc.hpp"
#include "ddk/model.hpp"
#include "ddk/normal.hpp"
#include "ddk/philox.hpp"
#include "ddk/quadrature.hpp"

namespace {

using namespace ddk;

void BM_GaussKronrodSmooth(benchmark::State& state) {
  for (auto _ : state) {
    const QuadResult r = integrate([](double z) { return std::exp(-z * z); }, -5.0, 5.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_GaussKronrodSmooth);

void BM_AdaptiveTail(benchmark::State& state) {
  for (auto _ : state) {
    const QuadResult r = integrate_tail([](double z) { return 1.0 / (1.0 + z * z * z); }, 0.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_AdaptiveTail);

void BM_SurvivalExample33(benchmark::State& state) {
  const auto m = build_model("example33");
  for (auto _ : state)
    benchmark::DoNotOptimize(survival_max_at_drawdown(m, 1.0, 1.0, 3.0).value);
}
BENCHMARK(BM_SurvivalExample33);

void BM_Lehoczky(benchmark::State& state) {
  const auto m = build_model(state.range(0) == 0 ? "bm_std" : "gbm");
  const double x = state.range(0) == 0 ? 0.0 : 1.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(lehoczky_lt(m, x, 0.5, 0.7, 0.3).value);
}
BENCHMARK(BM_Lehoczky)->Arg(0)->Arg(1);

void BM_Malyutin(benchmark::State& state) {
  const auto m = build_model("rbm");
  for (auto _ : state) benchmark::DoNotOptimize(malyutin_lt(m, 0.0, 2.0, 0.7, 0.5).value);
}
BENCHMARK(BM_Malyutin);

void BM_KernelIndicator(benchmark::State& state) {
  const auto m = build_model("bm_drift", std::vector<double>{1.0, 1.0});
  const TestFunction f = TestFunction::indicator(2.0, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_apply(m, 1.0, 2.0, 1.0, f).value);
}
BENCHMARK(BM_KernelIndicator);

void BM_JumpTimeSize(benchmark::State& state) {
  const auto m = build_model("bm_std");
  for (auto _ : state)
    benchmark::DoNotOptimize(jump_time_size_joint(m, 1.0, 2.0, 0.0, 1.0).value);
}
BENCHMARK(BM_JumpTimeSize);

void BM_PhiloxBlock(benchmark::State& state) {
  PhiloxStream s(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.next());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxBlock);

void BM_ZigguratNormal(benchmark::State& state) {
  PhiloxStream s(1, 0);
  const auto& z = ZigguratNormal::instance();
  for (auto _ : state) benchmark::DoNotOptimize(z(s));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ZigguratNormal);

// Path steps per second for the drawdown recorder.
void BM_DrawdownPaths(benchmark::State& state) {
  const auto m = build_model(state.range(0) == 0 ? "bm_std" : "rbm");
  McConfig cfg;
  cfg.n_paths = 200;
  cfg.step = 1e-3;
  cfg.threads = 1;
  std::int64_t steps = 0;
  for (auto _ : state) {
    const Simulation s = simulate_drawdown_stats(m, cfg, 0.0, std::vector<double>{1.0});
    for (const auto& p : s.paths) steps += static_cast<std::int64_t>(p.drawdowns[0].theta / cfg.step);
    benchmark::DoNotOptimize(s.paths.data());
  }
  state.SetItemsProcessed(steps);
}
BENCHMARK(BM_DrawdownPaths)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
