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

#include "splut/reference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "splut/errors.hpp"

namespace splut {

namespace {

using Mat = std::vector<std::vector<int64_t>>;  // [y][x]
using Stack = std::vector<Mat>;                  // [channel]

Mat make_mat(int w, int h) { return Mat(h, std::vector<int64_t>(w, 0)); }

// Answers table queries straight from the module, memoized per pattern.
class ModuleOracle {
 public:
  ModuleOracle(const MappingModule& m, int scale_exp, bool quantize)
      : eval_(m), scale_exp_(scale_exp), quantize_(quantize), out_(m.out_ch) {}

  const std::vector<int64_t>& query(int a, int b, int c, int d) {
    const std::array<int, 4> key = {a, b, c, d};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const std::array<float, 4> pattern = {static_cast<float>(a), static_cast<float>(b), static_cast<float>(c),
                                          static_cast<float>(d)};
    eval_.forward(pattern, out_);
    std::vector<int64_t> sixteenths(out_.size());
    for (size_t k = 0; k < out_.size(); ++k) {
      if (quantize_) {
        const int raw = quantize_entry(out_[k], scale_exp_);
        sixteenths[k] = static_cast<int64_t>(raw) * (int64_t{1} << (scale_exp_ + 4));
      } else {
        sixteenths[k] = std::llround(static_cast<double>(out_[k]) * 16.0);
      }
    }
    return memo_.emplace(key, std::move(sixteenths)).first->second;
  }

 private:
  MappingEvaluator eval_;
  int scale_exp_;
  bool quantize_;
  std::vector<float> out_;
  std::map<std::array<int, 4>, std::vector<int64_t>> memo_;
};

// Reflect-101 padding by one sample on the given sides.
Mat pad(const Mat& m, int left, int right, int top, int bottom) {
  const int h = static_cast<int>(m.size()), w = static_cast<int>(m[0].size());
  Mat out = make_mat(w + left + right, h + top + bottom);
  for (int y = 0; y < h + top + bottom; ++y)
    for (int x = 0; x < w + left + right; ++x) {
      int sy = y - top, sx = x - left;
      if (sy < 0) sy = -sy;
      if (sy >= h) sy = 2 * h - 2 - sy;
      if (sx < 0) sx = -sx;
      if (sx >= w) sx = 2 * w - 2 - sx;
      out[y][x] = m[sy][sx];
    }
  return out;
}

int64_t round_sixteenths(int64_t v) { return std::llround(static_cast<double>(v) / 16.0); }

struct BranchRunner {
  const ModelTopology& topo;
  std::vector<std::vector<std::unique_ptr<ModuleOracle>>> oracles;  // [stage][slot]

  BranchRunner(const ModelTopology& t, const std::vector<std::vector<MappingModule>>& modules, bool quantize)
      : topo(t) {
    oracles.resize(t.stage_count());
    for (const auto& s : t.table_shapes())
      oracles[s.stage].push_back(std::make_unique<ModuleOracle>(modules[s.stage][s.slot], s.scale_exp, quantize));
  }

  // Horizontal: left-pad a, right-pad b, add, keep the leading W columns.
  Stack aggregate(const Stack& f, const Aggregation& agg) const {
    const int h = static_cast<int>(f[0].size()), w = static_cast<int>(f[0][0].size());
    Stack out;
    for (int c = 0; c < 2; ++c) {
      const Mat& a = f[2 * agg.group_a + c];
      const Mat& b = f[2 * agg.group_b + c];
      const bool horiz = agg.direction == AggDirection::horizontal;
      const Mat pa = horiz ? pad(a, 1, 0, 0, 0) : pad(a, 0, 0, 1, 0);
      const Mat pb = horiz ? pad(b, 0, 1, 0, 0) : pad(b, 0, 0, 0, 1);
      Mat m = make_mat(w, h);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const int64_t sum = pa[y][x] + pb[y][x];
          m[y][x] = std::clamp<int64_t>(round_sixteenths(sum), 0, topo.query_bins - 1);
        }
      out.push_back(std::move(m));
    }
    return out;
  }

  Stack query(const Stack& f, int stage) {
    const QueryBlock& qb = topo.query_block(stage);
    const int h = static_cast<int>(f[0].size()), w = static_cast<int>(f[0][0].size());
    std::vector<Stack> maps;
    for (const auto& agg : qb.aggregations) maps.push_back(aggregate(f, agg));
    Stack out(qb.luts.front().out_ch, make_mat(w, h));
    for (size_t k = 0; k < qb.luts.size(); ++k) {
      const Stack& m = maps[qb.luts[k].source];
      const bool wc = qb.luts[k].kind == LutKind::wc;
      const Mat p0 = wc ? pad(m[0], 0, 1, 0, 0) : pad(m[0], 0, 0, 0, 1);
      const Mat p1 = wc ? pad(m[1], 0, 1, 0, 0) : pad(m[1], 0, 0, 0, 1);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const int xn = wc ? x + 1 : x, yn = wc ? y : y + 1;
          const auto& v = oracles[stage][k]->query(static_cast<int>(p0[y][x]), static_cast<int>(p0[yn][xn]),
                                                   static_cast<int>(p1[y][x]), static_cast<int>(p1[yn][xn]));
          for (size_t c = 0; c < v.size(); ++c) out[c][y][x] += v[c];
        }
    }
    return out;
  }

  // Returns the upscaled plane in sixteenths.
  Mat run(const Mat& codes, int64_t skip_unit) {
    const int h = static_cast<int>(codes.size()), w = static_cast<int>(codes[0].size());
    const Mat p = pad(codes, 0, 1, 0, 1);
    const int cf = topo.feature_channels;
    Stack y(cf, make_mat(w, h));
    for (int yy = 0; yy < h; ++yy)
      for (int xx = 0; xx < w; ++xx) {
        const auto& v = oracles[0][0]->query(static_cast<int>(p[yy][xx]), static_cast<int>(p[yy][xx + 1]),
                                             static_cast<int>(p[yy + 1][xx]), static_cast<int>(p[yy + 1][xx + 1]));
        for (int c = 0; c < cf; ++c) y[c][yy][xx] = v[c] + (topo.skips.sc1 ? codes[yy][xx] * 16 : 0);
      }
    for (int stage = 1; stage < topo.stage_count(); ++stage) {
      Stack q = query(y, stage);
      if (!topo.is_final_stage(stage)) {
        if (topo.skips.sc2)
          for (int c = 0; c < cf; ++c)
            for (int yy = 0; yy < h; ++yy)
              for (int xx = 0; xx < w; ++xx) q[c][yy][xx] += y[c][yy][xx];
        y = std::move(q);
        continue;
      }
      const int s = topo.scale;
      Mat sr = make_mat(w * s, h * s);
      for (int c = 0; c < s * s; ++c)
        for (int yy = 0; yy < h; ++yy)
          for (int xx = 0; xx < w; ++xx)
            sr[yy * s + c / s][xx * s + c % s] = q[c][yy][xx] + (topo.skips.sc3 ? codes[yy][xx] * skip_unit * 16 : 0);
      return sr;
    }
    throw UsageError("topology has no final query block");
  }
};

}  // namespace

Rgb8Image reference_pipeline(const Rgb8Image& image, const WeightSet& w, ReferenceOptions opts) {
  if (image.width() < 2 || image.height() < 2) throw UsageError("reference_pipeline: image must be at least 2x2");
  w.validate();
  const int s = w.topology.scale;
  BranchRunner msb(w.topology, w.modules[0], opts.quantize_entries);
  BranchRunner lsb(w.topology, w.modules[1], opts.quantize_entries);
  Rgb8Image out(image.width() * s, image.height() * s);
  for (int ch = 0; ch < 3; ++ch) {
    Mat hi = make_mat(image.width(), image.height()), lo = hi;
    for (int y = 0; y < image.height(); ++y)
      for (int x = 0; x < image.width(); ++x) {
        hi[y][x] = image.at(x, y, ch) / 16;
        lo[y][x] = image.at(x, y, ch) % 16;
      }
    const Mat a = msb.run(hi, 16);
    const Mat b = lsb.run(lo, 1);
    for (int y = 0; y < out.height(); ++y)
      for (int x = 0; x < out.width(); ++x)
        out.at(x, y, ch) = static_cast<uint8_t>(std::clamp<int64_t>(round_sixteenths(a[y][x] + b[y][x]), 0, 255));
  }
  return out;
}

}  // namespace splut
