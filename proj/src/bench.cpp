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

#include "splut/bench.hpp"

#include <algorithm>
#include <chrono>

#include "splut/errors.hpp"

namespace splut {

BenchResult bench_engine(const LutContainer& container, int width, int height, int iters, ExecConfig cfg) {
  if (iters < 3) throw UsageError("bench_engine: iters must be >= 3");
  const Rgb8Image image = random_image(width, height, 0xBE7C);
  BenchResult r;
  r.threads = std::max(1, cfg.threads);
  r.single_threaded = r.threads == 1 || cfg.backend == Backend::serial;
  for (int i = 0; i < iters; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const Rgb8Image out = super_resolve(image, container, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    if (out.empty()) throw std::logic_error("bench_engine: empty output");
    r.samples_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::vector<double> sorted = r.samples_ms;
  std::sort(sorted.begin(), sorted.end());
  r.min_ms = sorted.front();
  const size_t n = sorted.size();
  r.median_ms = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return r;
}

}  // namespace splut
