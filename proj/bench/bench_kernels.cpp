/* Copyright 2026 The SPLUT Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
=============================================================================*/

// Serial reference kernel vs the row-parallel OpenMP kernel on 320x180 LR
// input, plus table transfer cost.

#include <benchmark/benchmark.h>

#include "splut/engine.hpp"
#include "splut/mapping.hpp"
#include "splut/weights.hpp"

using namespace splut;

namespace {

const LutContainer& container(const char* variant) {
  static const LutContainer s = random_container(builtin_topology("S"), 1);
  static const LutContainer m = random_container(builtin_topology("M"), 1);
  static const LutContainer l = random_container(builtin_topology("L"), 1);
  return variant[0] == 'S' ? s : variant[0] == 'M' ? m : l;
}

void run(benchmark::State& state, const char* variant, Backend backend) {
  const auto& c = container(variant);
  const Rgb8Image img = random_image(320, 180, 0xBE7C);
  const ExecConfig cfg{backend, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(super_resolve(img, c, cfg));
  state.SetItemsProcessed(state.iterations() * 320 * 180);
}

void BM_serial_S(benchmark::State& s) { run(s, "S", Backend::serial); }
void BM_serial_M(benchmark::State& s) { run(s, "M", Backend::serial); }
void BM_serial_L(benchmark::State& s) { run(s, "L", Backend::serial); }
void BM_parallel_S(benchmark::State& s) { run(s, "S", Backend::parallel); }
void BM_parallel_M(benchmark::State& s) { run(s, "M", Backend::parallel); }
void BM_parallel_L(benchmark::State& s) { run(s, "L", Backend::parallel); }

void BM_transfer(benchmark::State& state) {
  const WeightSet w = random_weights(builtin_topology("M", static_cast<int>(state.range(0))), 1);
  const auto& m = w.module(Branch::msb, 2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(transfer_to_lut(m, static_cast<int>(state.range(0)), -1));
}

}  // namespace

BENCHMARK(BM_serial_S)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_serial_M)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_serial_L)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel_S)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_parallel_M)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_parallel_L)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_transfer)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
