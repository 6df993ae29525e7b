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

#include "splut/topology.hpp"

#include <algorithm>

#include "splut/errors.hpp"

namespace splut {

const char* to_string(AggDirection dir) { return dir == AggDirection::horizontal ? "H" : "V"; }

bool is_supported_query_bins(int bins) {
  return bins == 8 || bins == 12 || bins == 16 || bins == 20 || bins == 24;
}

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw UsageError("topology: " + what);
}

}  // namespace

void ModelTopology::validate() const {
  check(scale >= 1 && scale * scale <= 255, "scale must be in [1, 15]");
  check(feature_channels >= 2 && feature_channels % 2 == 0 && feature_channels <= 254,
        "C_f must be even and in [2, 254]");
  check(is_supported_query_bins(query_bins), "v_f must be one of 8, 12, 16, 20, 24");
  check(blocks.size() >= 2 && blocks.size() <= 255, "needs a spatial block and at least one query block");
  const auto* spatial = std::get_if<SpatialBlock>(&blocks.front());
  check(spatial != nullptr, "first block must be a spatial block");
  check(spatial->out_ch == feature_channels, "spatial block must output C_f channels");
  const int groups = feature_channels / 2;
  for (size_t b = 1; b < blocks.size(); ++b) {
    const auto* qb = std::get_if<QueryBlock>(&blocks[b]);
    check(qb != nullptr, "blocks after the first must be query blocks");
    check(!qb->aggregations.empty() && qb->aggregations.size() <= 255, "query block needs aggregations");
    check(!qb->luts.empty() && qb->luts.size() <= 255, "query block needs LUTs");
    for (const auto& agg : qb->aggregations)
      check(agg.group_a >= 0 && agg.group_a < groups && agg.group_b >= 0 && agg.group_b < groups,
            "aggregation group index outside [0, C_f/2)");
    const int expected = b + 1 == blocks.size() ? scale * scale : feature_channels;
    for (const auto& lut : qb->luts) {
      check(lut.kind == LutKind::wc || lut.kind == LutKind::hc, "query-block LUTs must be WC or HC");
      check(lut.source >= 0 && lut.source < static_cast<int>(qb->aggregations.size()),
            "LUT source is not an aggregation of its block");
      check(lut.out_ch == expected, "LUT out_ch must be C_f (intermediate) or s^2 (final)");
    }
  }
}

std::vector<TableShape> ModelTopology::table_shapes() const {
  std::vector<TableShape> shapes;
  for (int stage = 0; stage < stage_count(); ++stage) {
    if (const auto* sp = std::get_if<SpatialBlock>(&blocks[stage])) {
      shapes.push_back({stage, 0, LutKind::wh, kSpatialBins, sp->out_ch, kDefaultScaleExp});
      continue;
    }
    const auto& qb = std::get<QueryBlock>(blocks[stage]);
    for (int slot = 0; slot < static_cast<int>(qb.luts.size()); ++slot) {
      const auto& lut = qb.luts[slot];
      shapes.push_back({stage, slot, lut.kind, query_bins, lut.out_ch,
                        is_final_stage(stage) ? kFinalScaleExp : kDefaultScaleExp});
    }
  }
  return shapes;
}

namespace {

using enum AggDirection;

QueryBlock small_block(int out) {
  return {{{horizontal, 0, 1}, {vertical, 0, 1}}, {{LutKind::wc, 0, out}, {LutKind::hc, 1, out}}};
}

QueryBlock medium_block(int out) {
  return {{{horizontal, 0, 1}, {vertical, 2, 3}}, {{LutKind::wc, 0, out}, {LutKind::hc, 1, out}}};
}

QueryBlock large_block(int out) {
  return {{{vertical, 0, 1}, {vertical, 2, 3}, {horizontal, 4, 5}, {horizontal, 6, 7}},
          {{LutKind::hc, 0, out}, {LutKind::hc, 1, out}, {LutKind::wc, 2, out}, {LutKind::wc, 3, out}}};
}

}  // namespace

ModelTopology builtin_topology(std::string_view variant, int query_bins, SkipFlags skips) {
  if (variant.starts_with("SPLUT-")) variant.remove_prefix(6);
  ModelTopology t;
  t.scale = 4;
  t.query_bins = query_bins;
  t.skips = skips;
  const int sr = t.scale * t.scale;
  QueryBlock (*make)(int) = nullptr;
  int query_blocks = 2;
  if (variant == "S") {
    t.feature_channels = 4;
    make = small_block;
  } else if (variant == "M") {
    t.feature_channels = 8;
    make = medium_block;
  } else if (variant == "L") {
    t.feature_channels = 16;
    make = large_block;
  } else if (variant == "1-2") {
    t.feature_channels = 8;
    make = medium_block;
    query_blocks = 1;
  } else if (variant == "1-4") {
    t.feature_channels = 16;
    make = large_block;
    query_blocks = 1;
  } else {
    throw UsageError("unknown variant '" + std::string(variant) + "' (expected S, M, L, 1-2 or 1-4)");
  }
  t.name = "SPLUT-" + std::string(variant);
  t.blocks.push_back(SpatialBlock{t.feature_channels});
  for (int q = 0; q < query_blocks; ++q) t.blocks.push_back(make(q + 1 == query_blocks ? sr : t.feature_channels));
  t.validate();
  return t;
}

std::vector<std::string> builtin_variants() { return {"S", "M", "L", "1-2", "1-4"}; }

uint64_t container_payload_size(const ModelTopology& topology) {
  topology.validate();
  uint64_t per_branch = 0;
  for (const auto& shape : topology.table_shapes()) {
    const uint64_t v = static_cast<uint64_t>(shape.bins);
    per_branch += v * v * v * v * static_cast<uint64_t>(shape.out_ch);
  }
  return 2 * per_branch;
}

}  // namespace splut
