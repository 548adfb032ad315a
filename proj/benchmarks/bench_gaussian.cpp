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

#include "cpa/absorption.hpp"
#include "cpa/beamsplitter.hpp"
#include "cpa/gaussian.hpp"

namespace {

using cpa::ComplexAmplitude;
using cpa::SqueezedCoherentState;
using cpa::SqueezeParam;

const SqueezedCoherentState kIn1{ComplexAmplitude(1.2, 0.3), SqueezeParam(0.4, 0.1)};
const SqueezedCoherentState kIn2{ComplexAmplitude(0.8, -0.5), SqueezeParam(-0.2, 0.6)};

void BM_Analyze(benchmark::State& state) {
  const auto bs = cpa::LossyBeamSplitter::create({0.4, 0.1}, {-0.3, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpa::analyze(bs, kIn1, kIn2));
  }
}
BENCHMARK(BM_Analyze);

void BM_Dilation(benchmark::State& state) {
  const auto bs = cpa::cpa_splitter();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpa::dilation(bs));
  }
}
BENCHMARK(BM_Dilation);

void BM_GaussianPropagate(benchmark::State& state) {
  const auto u = cpa::dilation(cpa::cpa_splitter());
  const auto input = cpa::input_state(kIn1, kIn2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpa::propagate(input, u));
  }
}
BENCHMARK(BM_GaussianPropagate);

}  // namespace
