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

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "splut/lut.hpp"

namespace splut {

// horizontal: group_a is shifted one column right before the add (grows the
// receptive field along width). vertical: same along height.
enum class AggDirection : uint8_t { horizontal = 0, vertical = 1 };

const char* to_string(AggDirection dir);

// A channel group g is the channel pair (2g, 2g + 1).
struct Aggregation {
  AggDirection direction = AggDirection::horizontal;
  int group_a = 0;
  int group_b = 0;
  friend bool operator==(const Aggregation&, const Aggregation&) = default;
};

struct LutSlot {
  LutKind kind = LutKind::wc;
  int source = 0;  // index into the block's aggregations
  int out_ch = 0;
  friend bool operator==(const LutSlot&, const LutSlot&) = default;
};

struct SpatialBlock {
  int out_ch = 0;
  friend bool operator==(const SpatialBlock&, const SpatialBlock&) = default;
};

struct QueryBlock {
  std::vector<Aggregation> aggregations;
  std::vector<LutSlot> luts;
  friend bool operator==(const QueryBlock&, const QueryBlock&) = default;
};

using Block = std::variant<SpatialBlock, QueryBlock>;

struct SkipFlags {
  bool sc1 = true;  // input codes -> spatial block output
  bool sc2 = true;  // around every non-final query block
  bool sc3 = true;  // input pixel -> final query block output
  friend bool operator==(const SkipFlags&, const SkipFlags&) = default;
};

// Shape of one table slot as implied by a topology.
struct TableShape {
  int stage = 0;
  int slot = 0;
  LutKind kind = LutKind::wh;
  int bins = 0;
  int out_ch = 0;
  int scale_exp = 0;  // default used when tables are built from weights
};

struct ModelTopology {
  std::string name;
  int scale = 4;
  int feature_channels = 8;  // C_f
  int query_bins = 16;       // v_f
  std::vector<Block> blocks;
  SkipFlags skips;

  // Throws UsageError describing the first violated invariant.
  void validate() const;

  int stage_count() const { return static_cast<int>(blocks.size()); }
  bool is_final_stage(int stage) const { return stage == stage_count() - 1; }
  const QueryBlock& query_block(int stage) const { return std::get<QueryBlock>(blocks.at(stage)); }

  // One branch's table slots in canonical (stage, slot) order.
  std::vector<TableShape> table_shapes() const;

  friend bool operator==(const ModelTopology&, const ModelTopology&) = default;
};

inline constexpr int kDefaultScaleExp = -4;
inline constexpr int kFinalScaleExp = -1;

bool is_supported_query_bins(int bins);

// variant: S, M, L, 1-2, 1-4 (with or without a "SPLUT-" prefix).
ModelTopology builtin_topology(std::string_view variant, int query_bins = 16, SkipFlags skips = {});
std::vector<std::string> builtin_variants();

// Entry bytes of both branches, headers excluded.
uint64_t container_payload_size(const ModelTopology& topology);

}  // namespace splut
