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

// Straightforward per-pixel implementation of the retrieval pipeline. It is
// the reference the OpenMP kernel is tested against, and it is generic over
// the integer type so the arithmetic audit can run it with AuditedInt.

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "splut/container.hpp"
#include "splut/detail/audited_int.hpp"
#include "splut/image.hpp"
#include "splut/topology.hpp"

namespace splut::detail {

template <class Int>
struct Grid {
  int channels = 0;
  int width = 0;
  int height = 0;
  std::vector<Int> v;

  Grid() = default;
  Grid(int c, int w, int h) : channels(c), width(w), height(h), v(static_cast<size_t>(c) * w * h, Int(0)) {}

  Int& at(int c, int x, int y) { return v[(static_cast<size_t>(c) * height + y) * width + x]; }
  const Int& at(int c, int x, int y) const { return v[(static_cast<size_t>(c) * height + y) * width + x]; }
};

// Index packing through per-position stride tables: the offset of a pattern's
// entry row is stride[0][v0] + stride[1][v1] + stride[2][v2] + stride[3][v3].
struct PackPlan {
  std::array<std::vector<int32_t>, 4> stride;
  const int8_t* entries = nullptr;
  int out_ch = 0;
  int shift = 0;

  explicit PackPlan(const LutTable& t) : entries(t.entries().data()), out_ch(t.out_channels()), shift(t.feature_shift()) {
    int32_t weight = out_ch;
    for (int k = 3; k >= 0; --k) {
      stride[k].resize(t.bins());
      for (int v = 0; v < t.bins(); ++v) stride[k][v] = v * weight;
      weight *= t.bins();
    }
  }

  template <class Int>
  Int offset(Int v0, Int v1, Int v2, Int v3) const {
    return load(stride[0].data(), v0) + load(stride[1].data(), v1) + load(stride[2].data(), v2) +
           load(stride[3].data(), v3);
  }

  template <class Int>
  Int value(Int row, int c) const {
    return Int(load(entries, row + Int(c))) << shift;
  }
};

inline int next_index(int i, int len) { return i + 1 == len ? len - 2 : i + 1; }
inline int prev_index(int i) { return i == 0 ? 1 : i - 1; }

template <class Int>
Int quantize(Int v, int bins) {
  if (v < Int(0)) return Int(0);
  const Int r = (v + Int(8)) >> kFracBits;
  return r > Int(bins - 1) ? Int(bins - 1) : r;
}

template <class Int>
Grid<Int> spatial_block(const Grid<Int>& codes, const LutTable& table) {
  const PackPlan plan(table);
  const int w = codes.width, h = codes.height;
  Grid<Int> out(table.out_channels(), w, h);
  for (int y = 0; y < h; ++y) {
    const int y1 = next_index(y, h);
    for (int x = 0; x < w; ++x) {
      const int x1 = next_index(x, w);
      const Int row = plan.offset(codes.at(0, x, y), codes.at(0, x1, y), codes.at(0, x, y1), codes.at(0, x1, y1));
      for (int c = 0; c < plan.out_ch; ++c) out.at(c, x, y) = plan.value(row, c);
    }
  }
  return out;
}

template <class Int>
Grid<Int> aggregate(const Grid<Int>& f, int group_a, int group_b, AggDirection dir, int bins) {
  const int w = f.width, h = f.height;
  Grid<Int> out(2, w, h);
  for (int c = 0; c < 2; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const int xa = dir == AggDirection::horizontal ? prev_index(x) : x;
        const int ya = dir == AggDirection::vertical ? prev_index(y) : y;
        out.at(c, x, y) = quantize(f.at(2 * group_a + c, xa, ya) + f.at(2 * group_b + c, x, y), bins);
      }
  return out;
}

// acc += table(pattern of m); WC steps along x, HC along y.
template <class Int>
void accumulate_lut(const Grid<Int>& m, const LutTable& table, Grid<Int>& acc) {
  const PackPlan plan(table);
  const int w = m.width, h = m.height;
  const bool along_x = table.kind() == LutKind::wc;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int xn = along_x ? next_index(x, w) : x;
      const int yn = along_x ? y : next_index(y, h);
      const Int row = plan.offset(m.at(0, x, y), m.at(0, xn, yn), m.at(1, x, y), m.at(1, xn, yn));
      for (int c = 0; c < plan.out_ch; ++c) acc.at(c, x, y) = acc.at(c, x, y) + plan.value(row, c);
    }
}

template <class Int>
Grid<Int> query_block(const Grid<Int>& f, const QueryBlock& spec, std::span<const LutTable> tables, int bins) {
  if (tables.size() != spec.luts.size()) throw std::invalid_argument("query_block: table count disagrees with spec");
  std::vector<Grid<Int>> maps;
  maps.reserve(spec.aggregations.size());
  for (const auto& agg : spec.aggregations) maps.push_back(aggregate(f, agg.group_a, agg.group_b, agg.direction, bins));
  Grid<Int> out(tables.front().out_channels(), f.width, f.height);
  for (size_t k = 0; k < tables.size(); ++k) accumulate_lut(maps[spec.luts[k].source], tables[k], out);
  return out;
}

// Adds (codes << shift) to every channel of f.
template <class Int>
void add_broadcast(Grid<Int>& f, const Grid<Int>& codes, int shift) {
  for (int c = 0; c < f.channels; ++c)
    for (int y = 0; y < f.height; ++y)
      for (int x = 0; x < f.width; ++x) f.at(c, x, y) = f.at(c, x, y) + (codes.at(0, x, y) << shift);
}

template <class Int>
void add_into(Grid<Int>& f, const Grid<Int>& g) {
  for (size_t i = 0; i < f.v.size(); ++i) f.v[i] = f.v[i] + g.v[i];
}

template <class Int>
void check_range(const Grid<Int>& f) {
  for (const Int& v : f.v)
    if (to_int(v) >= kFeatureLimit || to_int(v) <= -kFeatureLimit)
      throw std::overflow_error("feature magnitude exceeds 2^24");
}

template <class Int>
Grid<Int> pixel_shuffle(const Grid<Int>& f, int s) {
  Grid<Int> out(1, f.width * s, f.height * s);
  for (int dy = 0; dy < s; ++dy)
    for (int dx = 0; dx < s; ++dx)
      for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) out.at(0, x * s + dx, y * s + dy) = f.at(dy * s + dx, x, y);
  return out;
}

// codes: one 4-bit plane. skip_shift: log2(skip_unit) + 4.
template <class Int>
Grid<Int> run_branch(const Grid<Int>& codes, const std::vector<std::vector<LutTable>>& tables, int skip_shift,
                     const ModelTopology& topo) {
  Grid<Int> y = spatial_block(codes, tables.at(0).at(0));
  if (topo.skips.sc1) add_broadcast(y, codes, kFracBits);
  check_range(y);
  for (int stage = 1; stage < topo.stage_count(); ++stage) {
    Grid<Int> q = query_block(y, topo.query_block(stage), tables.at(stage), topo.query_bins);
    if (topo.is_final_stage(stage)) {
      if (topo.skips.sc3) add_broadcast(q, codes, skip_shift);
      check_range(q);
      return pixel_shuffle(q, topo.scale);
    }
    if (topo.skips.sc2) add_into(q, y);
    check_range(q);
    y = std::move(q);
  }
  throw std::logic_error("run_branch: topology has no final query block");
}

template <class Int>
Int merge_pixel(Int msb, Int lsb) {
  const Int v = msb + lsb;
  if (v < Int(0)) return Int(0);
  const Int r = (v + Int(8)) >> kFracBits;
  return r > Int(255) ? Int(255) : r;
}

template <class Int>
Rgb8Image super_resolve(const Rgb8Image& image, const LutContainer& c) {
  const int w = image.width(), h = image.height(), s = c.topology.scale;
  Rgb8Image out(w * s, h * s);
  for (int ch = 0; ch < 3; ++ch) {
    Grid<Int> msb(1, w, h), lsb(1, w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const int p = image.at(x, y, ch);
        msb.at(0, x, y) = Int(p >> 4);
        lsb.at(0, x, y) = Int(p & 15);
      }
    const Grid<Int> hi = run_branch(msb, c.branch(Branch::msb), 8, c.topology);
    const Grid<Int> lo = run_branch(lsb, c.branch(Branch::lsb), 4, c.topology);
    for (int y = 0; y < h * s; ++y)
      for (int x = 0; x < w * s; ++x)
        out.at(x, y, ch) = static_cast<uint8_t>(to_int(merge_pixel(hi.at(0, x, y), lo.at(0, x, y))));
  }
  return out;
}

}  // namespace splut::detail
