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

#include <span>
#include <vector>

#include "splut/container.hpp"
#include "splut/image.hpp"
#include "splut/topology.hpp"

namespace splut {

enum class Backend {
  serial,    // per-pixel reference kernel
  parallel,  // row-parallel OpenMP kernel
};

struct ExecConfig {
  Backend backend = Backend::parallel;
  int threads = 1;
};

// codes: one plane of 4-bit codes. Output in sixteenths, one channel per
// table output; right and bottom borders use reflect_index.
FeatureMap spatial_block(const CodeMap& codes, const LutTable& table, ExecConfig cfg = {});

// Two-channel groups a and b; a is shifted by one step along the direction
// (reflected at the leading border), added to b, then quantized to codes.
CodeMap aggregate(const FeatureMap& group_a, const FeatureMap& group_b, AggDirection dir, int bins,
                  ExecConfig cfg = {});

// Sum of the block's LUT retrievals over its aggregated maps (no skip).
FeatureMap query_block(const FeatureMap& features, const QueryBlock& spec, std::span<const LutTable> tables,
                       int bins, ExecConfig cfg = {});

// One branch end to end, returning the s*W x s*H plane in sixteenths.
// skip_unit: pixel value of one code unit (16 for MSB, 1 for LSB).
FeatureMap run_branch(const CodeMap& codes, const std::vector<std::vector<LutTable>>& tables, int skip_unit,
                      const ModelTopology& topology, ExecConfig cfg = {});

Rgb8Image super_resolve(const Rgb8Image& image, const LutContainer& container, ExecConfig cfg = {});

// Inclusive bounding box on the SR grid; empty when nothing changed.
struct SrBox {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;
  bool empty() const { return x1 < x0 || y1 < y0; }
  int width() const { return empty() ? 0 : x1 - x0 + 1; }
  int height() const { return empty() ? 0 : y1 - y0 + 1; }
  bool contains(const SrBox& o) const { return o.empty() || (x0 <= o.x0 && y0 <= o.y0 && o.x1 <= x1 && o.y1 <= y1); }
  void include(int x, int y);
  friend bool operator==(const SrBox&, const SrBox&) = default;
};

// SR pixels that change when the LR pixel at (probe_x, probe_y) of `base` is
// replaced by each value of a fixed perturbation set (all three channels).
SrBox influence_extent(const LutContainer& container, const Rgb8Image& base, int probe_x, int probe_y,
                       ExecConfig cfg = {});
// Same, on a 32x32 pseudo-random base image with the probe at (16, 16).
SrBox influence_extent(const LutContainer& container, ExecConfig cfg = {});

// Deterministic pseudo-random RGB image.
Rgb8Image random_image(int width, int height, uint64_t seed);

}  // namespace splut
