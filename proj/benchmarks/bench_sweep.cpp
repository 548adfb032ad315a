// Copyright 2026 The cpa-squeeze Authors
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

#include "sweep.hpp"

namespace {

using cpa::tools::SweepSpec;
using cpa::tools::SweepTarget;

void BM_FigureSweep(benchmark::State& state) {
  SweepSpec spec;
  spec.target = SweepTarget::Fig2;
  spec.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpa::tools::run_sweep(spec));
  }
}
BENCHMARK(BM_FigureSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CustomSweep(benchmark::State& state) {
  SweepSpec spec;
  spec.target = SweepTarget::Custom;
  spec.axes = {{"xi", -2.0, 2.0, 50}, {"theta", 0.0, 6.0, 50}};
  spec.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpa::tools::run_sweep(spec));
  }
}
BENCHMARK(BM_CustomSweep)->Unit(benchmark::kMillisecond);

}  // namespace
