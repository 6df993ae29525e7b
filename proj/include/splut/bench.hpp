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

#pragma once

#include <vector>

#include "splut/container.hpp"
#include "splut/engine.hpp"

namespace splut {

struct BenchResult {
  std::vector<double> samples_ms;
  double median_ms = 0.0;
  double min_ms = 0.0;
  int threads = 1;
  bool single_threaded = true;
};

// Times super_resolve on a fixed pseudo-random width x height image.
// Container loading and image creation are outside the timed region.
BenchResult bench_engine(const LutContainer& container, int width, int height, int iters, ExecConfig cfg = {});

}  // namespace splut
