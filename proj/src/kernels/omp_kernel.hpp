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

// Row-parallel kernel. Features are kept pixel-interleaved (HWC) so each LUT
// row lands in contiguous memory.

#include <array>
#include <vector>

#include "splut/container.hpp"
#include "splut/image.hpp"
#include "splut/topology.hpp"

namespace splut::omp_kernel {

struct Hwc {
  int channels = 0;
  int width = 0;
  int height = 0;
  std::vector<int32_t> v;

  Hwc() = default;
  Hwc(int c, int w, int h) : channels(c), width(w), height(h), v(static_cast<size_t>(c) * w * h) {}
  int32_t* px(int x, int y) { return v.data() + (static_cast<size_t>(y) * width + x) * channels; }
  const int32_t* px(int x, int y) const { return v.data() + (static_cast<size_t>(y) * width + x) * channels; }
};

// Two-channel interleaved code map.
struct Codes2 {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> v;
  Codes2(int w, int h) : width(w), height(h), v(static_cast<size_t>(w) * h * 2) {}
  uint8_t* px(int x, int y) { return v.data() + (static_cast<size_t>(y) * width + x) * 2; }
  const uint8_t* px(int x, int y) const { return v.data() + (static_cast<size_t>(y) * width + x) * 2; }
};

// sc1_shift < 0 disables the input skip.
Hwc spatial_block(const uint8_t* codes, int width, int height, const LutTable& table, int sc1_shift, int threads);
Codes2 aggregate(const Hwc& f, int channel_a, int channel_b, AggDirection dir, int bins, int threads);
void accumulate_lut(const Codes2& m, const LutTable& table, Hwc& acc, int threads);
// Final-stage variant: adds straight into the s*W x s*H plane (pixel shuffle fused).
void accumulate_lut_shuffled(const Codes2& m, const LutTable& table, int scale, std::vector<int32_t>& sr, int threads);

Hwc query_block(const Hwc& f, const QueryBlock& spec, std::span<const LutTable> tables, int bins, int threads);

// Returns the s*W x s*H plane in sixteenths.
std::vector<int32_t> run_branch(const uint8_t* codes, int width, int height,
                                const std::vector<std::vector<LutTable>>& tables, int skip_shift,
                                const ModelTopology& topo, int threads);

Rgb8Image super_resolve(const Rgb8Image& image, const LutContainer& c, int threads);

}  // namespace splut::omp_kernel
