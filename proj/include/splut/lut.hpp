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
#include <cstdint>
#include <span>
#include <vector>

namespace splut {

// WH: 2x2 spatial pattern. WC: two channels x two columns. HC: two channels x two rows.
enum class LutKind : uint8_t { wh = 0, wc = 1, hc = 2 };

const char* to_string(LutKind kind);

inline constexpr int kSpatialBins = 16;
inline constexpr int kMinScaleExp = -4;
inline constexpr int kMaxScaleExp = 0;

// ((v0 * V + v1) * V + v2) * V + v3
uint32_t pack_index(int v0, int v1, int v2, int v3, int bins);
std::array<int, 4> unpack_index(uint32_t index, int bins);

// A 4D lookup table: bins^4 patterns, out_ch signed 8-bit entries per pattern.
// A raw entry r stands for r * 2^scale_exp.
class LutTable {
 public:
  LutTable() = default;
  LutTable(LutKind kind, int bins, int out_ch, int scale_exp);

  LutKind kind() const { return kind_; }
  int bins() const { return bins_; }
  int out_channels() const { return out_ch_; }
  int scale_exp() const { return scale_exp_; }
  // Left shift that converts a raw entry to sixteenths.
  int feature_shift() const { return scale_exp_ + 4; }
  uint32_t pattern_count() const { return pattern_count_; }

  std::span<const int8_t> lookup(uint32_t index) const;
  std::span<int8_t> row(uint32_t index);

  std::span<const int8_t> entries() const { return entries_; }
  std::span<int8_t> entries() { return entries_; }

  friend bool operator==(const LutTable&, const LutTable&) = default;

 private:
  LutKind kind_ = LutKind::wh;
  int bins_ = 0;
  int out_ch_ = 0;
  int scale_exp_ = 0;
  uint32_t pattern_count_ = 0;
  std::vector<int8_t> entries_;
};

}  // namespace splut
