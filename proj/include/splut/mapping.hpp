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

#include <array>
#include <span>
#include <vector>

#include "splut/lut.hpp"

namespace splut {

// rows x cols weight matrix (row-major, one row per output) plus bias.
struct DenseLayer {
  int rows = 0;
  int cols = 0;
  std::vector<float> weights;
  std::vector<float> bias;

  DenseLayer() = default;
  DenseLayer(int r, int c) : rows(r), cols(c), weights(static_cast<size_t>(r) * c), bias(r) {}
  float& w(int r, int c) { return weights[static_cast<size_t>(r) * cols + c]; }
  float w(int r, int c) const { return weights[static_cast<size_t>(r) * cols + c]; }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

inline constexpr int kHiddenWidth = 64;

// The float network that stands in for one LUT: a kh x kw head convolution
// (evaluated at a single site it is a dot product over the four pattern
// codes), two hidden 1x1 layers, an output 1x1 layer; GELU after all but the
// last. The head's input order equals the pattern order.
struct MappingModule {
  int kh = 2;
  int kw = 2;
  int in_ch = 1;
  int out_ch = 0;
  std::array<DenseLayer, 4> layers;

  // Zero weights with the standard layer shapes.
  static MappingModule zeros(LutKind kind, int out_ch, int hidden = kHiddenWidth);

  // Throws UsageError when the layer chain is inconsistent.
  void validate() const;

  friend bool operator==(const MappingModule&, const MappingModule&) = default;
};

// (kh, kw, in_ch) for a LUT kind.
std::array<int, 3> module_geometry(LutKind kind);

// tanh-form GELU.
float gelu(float x);

std::vector<float> mapping_forward(const MappingModule& m, std::span<const float, 4> pattern);

// Reusable evaluator with transposed weights and scratch space. Produces
// exactly the same floats as mapping_forward. Not thread-safe; use one per thread.
class MappingEvaluator {
 public:
  explicit MappingEvaluator(const MappingModule& m);
  // out must hold out_ch floats.
  void forward(std::span<const float, 4> pattern, std::span<float> out);
  int out_channels() const { return out_ch_; }

 private:
  struct Layer {
    int rows, cols;
    std::vector<float> wt;  // cols x rows
    std::vector<float> bias;
  };
  std::array<Layer, 4> layers_;
  std::vector<float> a_, b_;
  int out_ch_;
};

// clamp(round_half_away(value / 2^scale_exp), -128, 127)
int8_t quantize_entry(float value, int scale_exp);

// Evaluates the module on every bins^4 pattern in pack_index order.
LutTable transfer_to_lut(const MappingModule& m, int bins, int scale_exp, int threads = 1);

// Kind implied by the module geometry; throws UsageError for other shapes.
LutKind module_kind(const MappingModule& m);

}  // namespace splut
