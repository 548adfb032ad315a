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

#include "cpa/beamsplitter.hpp"
#include "cpa/fock.hpp"

namespace {

using cpa::ComplexAmplitude;
using cpa::SqueezedCoherentState;
using cpa::SqueezeParam;

void BM_MixerBlocks(benchmark::State& state) {
  const Eigen::Matrix2cd m = cpa::fock::mixer_matrix(0.7, 0.3);
  const auto max_total = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpa::fock::mixer_blocks(m, max_total));
  }
}
BENCHMARK(BM_MixerBlocks)->Arg(18)->Arg(38)->Arg(78)->Unit(benchmark::kMicrosecond);

void BM_PrepareSqueezedCoherent(benchmark::State& state) {
  const SqueezedCoherentState in{ComplexAmplitude(1.0, 0.4), SqueezeParam(0.5, 0.2)};
  const auto cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpa::fock::prepare_squeezed_coherent(in, cutoff));
  }
}
BENCHMARK(BM_PrepareSqueezedCoherent)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

// Four-mode CPA dilation: preparation, gates, moments.
void BM_RunDilation(benchmark::State& state) {
  const SqueezedCoherentState in{ComplexAmplitude(0.6, 0.0), SqueezeParam(0.2, 0.0)};
  cpa::fock::Options opts;
  opts.cutoff = static_cast<int>(state.range(0));
  opts.max_cutoff = opts.cutoff;
  const auto bs = cpa::cpa_splitter();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpa::fock::run_dilation(bs, in, in, opts));
  }
}
BENCHMARK(BM_RunDilation)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
