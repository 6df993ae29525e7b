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

#include "splut/engine.hpp"

#include <algorithm>
#include <string>

#include "kernels/omp_kernel.hpp"
#include "splut/detail/serial_kernel.hpp"
#include "splut/errors.hpp"
#include "splut/rng.hpp"

namespace splut {

namespace {

using detail::Grid;

Grid<int32_t> to_grid(const FeatureMap& f) {
  Grid<int32_t> g(f.channels, f.width, f.height);
  std::copy(f.values.begin(), f.values.end(), g.v.begin());
  return g;
}

Grid<int32_t> to_grid(const CodeMap& m) {
  Grid<int32_t> g(m.channels, m.width, m.height);
  std::copy(m.values.begin(), m.values.end(), g.v.begin());
  return g;
}

FeatureMap to_feature_map(const Grid<int32_t>& g) {
  FeatureMap f(g.channels, g.width, g.height);
  std::copy(g.v.begin(), g.v.end(), f.values.begin());
  return f;
}

CodeMap to_code_map(const Grid<int32_t>& g) {
  CodeMap m(g.channels, g.width, g.height);
  std::transform(g.v.begin(), g.v.end(), m.values.begin(), [](int32_t v) { return static_cast<uint8_t>(v); });
  return m;
}

omp_kernel::Hwc to_hwc(const FeatureMap& f) {
  omp_kernel::Hwc h(f.channels, f.width, f.height);
  for (int c = 0; c < f.channels; ++c)
    for (int y = 0; y < f.height; ++y)
      for (int x = 0; x < f.width; ++x) h.px(x, y)[c] = f.at(c, x, y);
  return h;
}

FeatureMap from_hwc(const omp_kernel::Hwc& h) {
  FeatureMap f(h.channels, h.width, h.height);
  for (int c = 0; c < h.channels; ++c)
    for (int y = 0; y < h.height; ++y)
      for (int x = 0; x < h.width; ++x) f.at(c, x, y) = h.px(x, y)[c];
  return f;
}

int threads_of(ExecConfig cfg) { return std::max(1, cfg.threads); }

void require_plane(const CodeMap& codes) {
  if (codes.channels != 1) throw UsageError("expected a single code plane");
  if (codes.width < 2 || codes.height < 2) throw UsageError("code plane must be at least 2x2");
}

void require_codes_below(const CodeMap& codes, int bins) {
  for (uint8_t v : codes.values)
    if (v >= bins) throw UsageError("code " + std::to_string(v) + " outside [0, " + std::to_string(bins) + ")");
}

int skip_shift_of(int skip_unit) {
  for (int k = 0; k <= 8; ++k)
    if (skip_unit == 1 << k) return k + kFracBits;
  throw UsageError("skip_unit must be a power of two in [1, 256]");
}

void require_branch_tables(const std::vector<std::vector<LutTable>>& tables, const ModelTopology& topo) {
  topo.validate();
  if (static_cast<int>(tables.size()) != topo.stage_count()) throw UsageError("branch tables: wrong stage count");
  for (const auto& s : topo.table_shapes()) {
    if (s.slot >= static_cast<int>(tables[s.stage].size())) throw UsageError("branch tables: missing table");
    const auto& t = tables[s.stage][s.slot];
    if (t.kind() != s.kind || t.bins() != s.bins || t.out_channels() != s.out_ch)
      throw UsageError("branch tables: table shape disagrees with topology");
  }
}

}  // namespace

FeatureMap spatial_block(const CodeMap& codes, const LutTable& table, ExecConfig cfg) {
  require_plane(codes);
  if (table.kind() != LutKind::wh) throw UsageError("spatial_block: table kind must be WH");
  require_codes_below(codes, table.bins());
  if (cfg.backend == Backend::serial) return to_feature_map(detail::spatial_block(to_grid(codes), table));
  return from_hwc(
      omp_kernel::spatial_block(codes.values.data(), codes.width, codes.height, table, -1, threads_of(cfg)));
}

CodeMap aggregate(const FeatureMap& group_a, const FeatureMap& group_b, AggDirection dir, int bins, ExecConfig cfg) {
  if (group_a.channels != 2 || group_b.channels != 2) throw UsageError("aggregate: groups must have two channels");
  if (group_a.width != group_b.width || group_a.height != group_b.height)
    throw UsageError("aggregate: group dimensions differ");
  if (group_a.width < 2 || group_a.height < 2) throw UsageError("aggregate: groups must be at least 2x2");
  if (bins < 2) throw UsageError("aggregate: bins must be >= 2");
  FeatureMap both(4, group_a.width, group_a.height);
  std::copy(group_a.values.begin(), group_a.values.end(), both.values.begin());
  std::copy(group_b.values.begin(), group_b.values.end(), both.values.begin() + group_a.values.size());
  if (cfg.backend == Backend::serial) return to_code_map(detail::aggregate(to_grid(both), 0, 1, dir, bins));
  const auto m = omp_kernel::aggregate(to_hwc(both), 0, 2, dir, bins, threads_of(cfg));
  CodeMap out(2, m.width, m.height);
  for (int c = 0; c < 2; ++c)
    for (int y = 0; y < m.height; ++y)
      for (int x = 0; x < m.width; ++x) out.at(c, x, y) = m.px(x, y)[c];
  return out;
}

FeatureMap query_block(const FeatureMap& features, const QueryBlock& spec, std::span<const LutTable> tables,
                       int bins, ExecConfig cfg) {
  if (tables.size() != spec.luts.size() || tables.empty()) throw UsageError("query_block: table count disagrees with spec");
  if (features.width < 2 || features.height < 2) throw UsageError("query_block: features must be at least 2x2");
  for (const auto& agg : spec.aggregations)
    if (agg.group_a < 0 || agg.group_b < 0 || 2 * std::max(agg.group_a, agg.group_b) + 1 >= features.channels)
      throw UsageError("query_block: aggregation group outside the feature channels");
  for (size_t k = 0; k < tables.size(); ++k) {
    const auto& slot = spec.luts[k];
    if (slot.source < 0 || slot.source >= static_cast<int>(spec.aggregations.size()))
      throw UsageError("query_block: LUT source is not an aggregation");
    if (tables[k].kind() != slot.kind || tables[k].out_channels() != slot.out_ch || tables[k].bins() != bins ||
        tables[k].out_channels() != tables[0].out_channels())
      throw UsageError("query_block: table " + std::to_string(k) + " does not match its slot");
  }
  if (cfg.backend == Backend::serial) return to_feature_map(detail::query_block(to_grid(features), spec, tables, bins));
  return from_hwc(omp_kernel::query_block(to_hwc(features), spec, tables, bins, threads_of(cfg)));
}

FeatureMap run_branch(const CodeMap& codes, const std::vector<std::vector<LutTable>>& tables, int skip_unit,
                      const ModelTopology& topology, ExecConfig cfg) {
  require_plane(codes);
  require_codes_below(codes, kSpatialBins);
  require_branch_tables(tables, topology);
  const int shift = skip_shift_of(skip_unit);
  if (cfg.backend == Backend::serial) return to_feature_map(detail::run_branch(to_grid(codes), tables, shift, topology));
  FeatureMap out(1, codes.width * topology.scale, codes.height * topology.scale);
  out.values = omp_kernel::run_branch(codes.values.data(), codes.width, codes.height, tables, shift, topology,
                                      threads_of(cfg));
  return out;
}

Rgb8Image super_resolve(const Rgb8Image& image, const LutContainer& container, ExecConfig cfg) {
  if (image.width() < 2 || image.height() < 2) throw UsageError("super_resolve: image must be at least 2x2");
  container.validate();
  if (cfg.backend == Backend::serial) return detail::super_resolve<int32_t>(image, container);
  return omp_kernel::super_resolve(image, container, threads_of(cfg));
}

Rgb8Image random_image(int width, int height, uint64_t seed) {
  Rgb8Image img(width, height);
  SplitMix64 rng(seed);
  for (auto& p : img.data()) p = static_cast<uint8_t>(rng.next() >> 56);
  return img;
}

}  // namespace splut
