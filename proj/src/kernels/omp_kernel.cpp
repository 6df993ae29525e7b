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

#include "kernels/omp_kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace splut::omp_kernel {

namespace {

struct Plan {
  std::array<std::vector<int32_t>, 4> stride;
  const int8_t* entries;
  int out_ch;
  int shift;

  explicit Plan(const LutTable& t) : entries(t.entries().data()), out_ch(t.out_channels()), shift(t.feature_shift()) {
    int32_t weight = out_ch;
    for (int k = 3; k >= 0; --k) {
      stride[k].resize(t.bins());
      for (int v = 0; v < t.bins(); ++v) stride[k][v] = v * weight;
      weight *= t.bins();
    }
  }

  const int8_t* row(int v0, int v1, int v2, int v3) const {
    return entries + stride[0][v0] + stride[1][v1] + stride[2][v2] + stride[3][v3];
  }
};

inline int next_index(int i, int len) { return i + 1 == len ? len - 2 : i + 1; }
inline int prev_index(int i) { return i == 0 ? 1 : i - 1; }

inline uint8_t quantize(int32_t v, int32_t top) {
  if (v < 0) return 0;
  const int32_t r = (v + 8) >> kFracBits;
  return static_cast<uint8_t>(r > top ? top : r);
}

}  // namespace

Hwc spatial_block(const uint8_t* codes, int width, int height, const LutTable& table, int sc1_shift, int threads) {
  const Plan plan(table);
  Hwc out(plan.out_ch, width, height);
  const int oc = plan.out_ch, shift = plan.shift;
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < height; ++y) {
    const uint8_t* r0 = codes + static_cast<size_t>(y) * width;
    const uint8_t* r1 = codes + static_cast<size_t>(next_index(y, height)) * width;
    int32_t* dst = out.px(0, y);
    for (int x = 0; x < width; ++x, dst += oc) {
      const int x1 = next_index(x, width);
      const int8_t* e = plan.row(r0[x], r0[x1], r1[x], r1[x1]);
      const int32_t skip = sc1_shift < 0 ? 0 : static_cast<int32_t>(r0[x]) << sc1_shift;
      for (int c = 0; c < oc; ++c) dst[c] = (static_cast<int32_t>(e[c]) << shift) + skip;
    }
  }
  return out;
}

Codes2 aggregate(const Hwc& f, int channel_a, int channel_b, AggDirection dir, int bins, int threads) {
  Codes2 out(f.width, f.height);
  const int32_t top = bins - 1;
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < f.height; ++y) {
    const int ya = dir == AggDirection::vertical ? prev_index(y) : y;
    uint8_t* dst = out.px(0, y);
    for (int x = 0; x < f.width; ++x, dst += 2) {
      const int xa = dir == AggDirection::horizontal ? prev_index(x) : x;
      const int32_t* a = f.px(xa, ya) + channel_a;
      const int32_t* b = f.px(x, y) + channel_b;
      dst[0] = quantize(a[0] + b[0], top);
      dst[1] = quantize(a[1] + b[1], top);
    }
  }
  return out;
}

void accumulate_lut(const Codes2& m, const LutTable& table, Hwc& acc, int threads) {
  const Plan plan(table);
  const int oc = plan.out_ch, shift = plan.shift;
  const bool along_x = table.kind() == LutKind::wc;
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < m.height; ++y) {
    const int yn = along_x ? y : next_index(y, m.height);
    int32_t* dst = acc.px(0, y);
    for (int x = 0; x < m.width; ++x, dst += oc) {
      const uint8_t* p = m.px(x, y);
      const uint8_t* q = m.px(along_x ? next_index(x, m.width) : x, yn);
      const int8_t* e = plan.row(p[0], q[0], p[1], q[1]);
      for (int c = 0; c < oc; ++c) dst[c] += static_cast<int32_t>(e[c]) << shift;
    }
  }
}

void accumulate_lut_shuffled(const Codes2& m, const LutTable& table, int scale, std::vector<int32_t>& sr,
                             int threads) {
  const Plan plan(table);
  const int shift = plan.shift;
  const bool along_x = table.kind() == LutKind::wc;
  const size_t sr_width = static_cast<size_t>(m.width) * scale;
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < m.height; ++y) {
    const int yn = along_x ? y : next_index(y, m.height);
    int32_t* block_row = sr.data() + static_cast<size_t>(y) * scale * sr_width;
    for (int x = 0; x < m.width; ++x) {
      const uint8_t* p = m.px(x, y);
      const uint8_t* q = m.px(along_x ? next_index(x, m.width) : x, yn);
      const int8_t* e = plan.row(p[0], q[0], p[1], q[1]);
      int32_t* dst = block_row + static_cast<size_t>(x) * scale;
      for (int dy = 0; dy < scale; ++dy, dst += sr_width, e += scale)
        for (int dx = 0; dx < scale; ++dx) dst[dx] += static_cast<int32_t>(e[dx]) << shift;
    }
  }
}

Hwc query_block(const Hwc& f, const QueryBlock& spec, std::span<const LutTable> tables, int bins, int threads) {
  if (tables.size() != spec.luts.size()) throw std::invalid_argument("query_block: table count disagrees with spec");
  std::vector<Codes2> maps;
  maps.reserve(spec.aggregations.size());
  for (const auto& a : spec.aggregations)
    maps.push_back(aggregate(f, 2 * a.group_a, 2 * a.group_b, a.direction, bins, threads));
  Hwc out(tables.front().out_channels(), f.width, f.height);
  for (size_t k = 0; k < tables.size(); ++k) accumulate_lut(maps[spec.luts[k].source], tables[k], out, threads);
  return out;
}

std::vector<int32_t> run_branch(const uint8_t* codes, int width, int height,
                                const std::vector<std::vector<LutTable>>& tables, int skip_shift,
                                const ModelTopology& topo, int threads) {
  const int s = topo.scale;
  Hwc y = spatial_block(codes, width, height, tables.at(0).at(0), topo.skips.sc1 ? kFracBits : -1, threads);
  for (int stage = 1; stage < topo.stage_count(); ++stage) {
    const QueryBlock& spec = topo.query_block(stage);
    const auto& stage_tables = tables.at(stage);
    if (!topo.is_final_stage(stage)) {
      Hwc q = query_block(y, spec, stage_tables, topo.query_bins, threads);
      if (topo.skips.sc2)
        for (size_t i = 0; i < q.v.size(); ++i) q.v[i] += y.v[i];
      y = std::move(q);
      continue;
    }
    std::vector<Codes2> maps;
    maps.reserve(spec.aggregations.size());
    for (const auto& a : spec.aggregations)
      maps.push_back(aggregate(y, 2 * a.group_a, 2 * a.group_b, a.direction, topo.query_bins, threads));

    const size_t sr_width = static_cast<size_t>(width) * s;
    std::vector<int32_t> sr(sr_width * height * s);
    if (topo.skips.sc3) {
#pragma omp parallel for num_threads(threads) schedule(static)
      for (int yy = 0; yy < height * s; ++yy) {
        const uint8_t* src = codes + static_cast<size_t>(yy / s) * width;
        int32_t* dst = sr.data() + yy * sr_width;
        for (size_t xx = 0; xx < sr_width; ++xx) dst[xx] = static_cast<int32_t>(src[xx / s]) << skip_shift;
      }
    }
    for (size_t k = 0; k < stage_tables.size(); ++k)
      accumulate_lut_shuffled(maps[spec.luts[k].source], stage_tables[k], s, sr, threads);
    return sr;
  }
  throw std::logic_error("run_branch: topology has no final query block");
}

Rgb8Image super_resolve(const Rgb8Image& image, const LutContainer& c, int threads) {
  const int w = image.width(), h = image.height(), s = c.topology.scale;
  const size_t n = static_cast<size_t>(w) * h;
  Rgb8Image out(w * s, h * s);
  std::vector<uint8_t> msb(n), lsb(n);
  const auto src = image.data();
  auto dst = out.data();
  for (int ch = 0; ch < 3; ++ch) {
    for (size_t i = 0; i < n; ++i) {
      msb[i] = src[i * 3 + ch] >> 4;
      lsb[i] = src[i * 3 + ch] & 15;
    }
    const auto hi = run_branch(msb.data(), w, h, c.branch(Branch::msb), 8, c.topology, threads);
    const auto lo = run_branch(lsb.data(), w, h, c.branch(Branch::lsb), 4, c.topology, threads);
    const int64_t total = static_cast<int64_t>(hi.size());
#pragma omp parallel for num_threads(threads) schedule(static)
    for (int64_t i = 0; i < total; ++i) {
      const int32_t v = hi[i] + lo[i];
      const int32_t r = v < 0 ? 0 : (v + 8) >> kFracBits;
      dst[i * 3 + ch] = static_cast<uint8_t>(r > 255 ? 255 : r);
    }
  }
  return out;
}

}  // namespace splut::omp_kernel
