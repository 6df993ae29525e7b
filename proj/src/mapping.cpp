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

#include "splut/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splut/errors.hpp"

namespace splut {

std::array<int, 3> module_geometry(LutKind kind) {
  switch (kind) {
    case LutKind::wh: return {2, 2, 1};
    case LutKind::wc: return {1, 2, 2};
    case LutKind::hc: return {2, 1, 2};
  }
  throw UsageError("unknown LUT kind");
}

LutKind module_kind(const MappingModule& m) {
  for (LutKind k : {LutKind::wh, LutKind::wc, LutKind::hc})
    if (module_geometry(k) == std::array<int, 3>{m.kh, m.kw, m.in_ch}) return k;
  throw UsageError("module geometry (" + std::to_string(m.kh) + "," + std::to_string(m.kw) + "," +
                   std::to_string(m.in_ch) + ") matches no LUT kind");
}

MappingModule MappingModule::zeros(LutKind kind, int out_ch, int hidden) {
  const auto g = module_geometry(kind);
  MappingModule m;
  m.kh = g[0];
  m.kw = g[1];
  m.in_ch = g[2];
  m.out_ch = out_ch;
  m.layers = {DenseLayer(hidden, 4), DenseLayer(hidden, hidden), DenseLayer(hidden, hidden), DenseLayer(out_ch, hidden)};
  return m;
}

void MappingModule::validate() const {
  module_kind(*this);
  if (out_ch < 1) throw UsageError("module out_ch must be positive");
  int cols = kh * kw * in_ch;
  for (size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.rows < 1 || l.cols != cols)
      throw UsageError("layer " + std::to_string(i) + " expects " + std::to_string(cols) + " inputs, has " +
                       std::to_string(l.cols));
    if (l.weights.size() != static_cast<size_t>(l.rows) * l.cols || l.bias.size() != static_cast<size_t>(l.rows))
      throw UsageError("layer " + std::to_string(i) + " storage disagrees with its shape");
    cols = l.rows;
  }
  if (layers.back().rows != out_ch) throw UsageError("output layer rows disagree with out_ch");
}

float gelu(float x) {
  constexpr float k = 0.7978845608028654f;  // sqrt(2 / pi)
  return 0.5f * x * (1.0f + std::tanh(k * (x + 0.044715f * x * x * x)));
}

std::vector<float> mapping_forward(const MappingModule& m, std::span<const float, 4> pattern) {
  m.validate();
  std::vector<float> x(pattern.begin(), pattern.end());
  for (size_t i = 0; i < m.layers.size(); ++i) {
    const auto& l = m.layers[i];
    std::vector<float> y(l.rows);
    for (int r = 0; r < l.rows; ++r) {
      float acc = l.bias[r];
      for (int c = 0; c < l.cols; ++c) acc += l.w(r, c) * x[c];
      y[r] = i + 1 < m.layers.size() ? gelu(acc) : acc;
    }
    x = std::move(y);
  }
  return x;
}

MappingEvaluator::MappingEvaluator(const MappingModule& m) : out_ch_(m.out_ch) {
  m.validate();
  size_t widest = 4;
  for (size_t i = 0; i < 4; ++i) {
    const auto& l = m.layers[i];
    Layer& dst = layers_[i];
    dst.rows = l.rows;
    dst.cols = l.cols;
    dst.bias = l.bias;
    dst.wt.resize(l.weights.size());
    for (int r = 0; r < l.rows; ++r)
      for (int c = 0; c < l.cols; ++c) dst.wt[static_cast<size_t>(c) * l.rows + r] = l.w(r, c);
    widest = std::max(widest, static_cast<size_t>(l.rows));
  }
  a_.resize(widest);
  b_.resize(widest);
}

void MappingEvaluator::forward(std::span<const float, 4> pattern, std::span<float> out) {
  std::copy(pattern.begin(), pattern.end(), a_.begin());
  float* in = a_.data();
  float* acc = b_.data();
  for (size_t i = 0; i < 4; ++i) {
    const Layer& l = layers_[i];
    std::copy(l.bias.begin(), l.bias.end(), acc);
    for (int c = 0; c < l.cols; ++c) {
      const float xc = in[c];
      const float* col = l.wt.data() + static_cast<size_t>(c) * l.rows;
      for (int r = 0; r < l.rows; ++r) acc[r] += col[r] * xc;
    }
    if (i + 1 < 4)
      for (int r = 0; r < l.rows; ++r) acc[r] = gelu(acc[r]);
    std::swap(in, acc);
  }
  std::copy(in, in + out_ch_, out.begin());
}

int8_t quantize_entry(float value, int scale_exp) {
  const double scaled = std::ldexp(static_cast<double>(value), -scale_exp);
  return static_cast<int8_t>(std::clamp(std::round(scaled), -128.0, 127.0));
}

LutTable transfer_to_lut(const MappingModule& m, int bins, int scale_exp, int threads) {
  LutTable table(module_kind(m), bins, m.out_ch, scale_exp);
  const int64_t patterns = table.pattern_count();
  auto entries = table.entries();
  const int oc = m.out_ch;
#pragma omp parallel num_threads(std::max(1, threads))
  {
    MappingEvaluator eval(m);
    std::vector<float> out(oc);
#pragma omp for schedule(static)
    for (int64_t idx = 0; idx < patterns; ++idx) {
      const auto v = unpack_index(static_cast<uint32_t>(idx), bins);
      const std::array<float, 4> pattern = {static_cast<float>(v[0]), static_cast<float>(v[1]),
                                            static_cast<float>(v[2]), static_cast<float>(v[3])};
      eval.forward(pattern, out);
      for (int c = 0; c < oc; ++c) entries[idx * oc + c] = quantize_entry(out[c], scale_exp);
    }
  }
  return table;
}

}  // namespace splut
