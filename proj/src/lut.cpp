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

#include "splut/lut.hpp"

#include <string>

#include "splut/errors.hpp"

namespace splut {

const char* to_string(LutKind kind) {
  switch (kind) {
    case LutKind::wh: return "WH";
    case LutKind::wc: return "WC";
    case LutKind::hc: return "HC";
  }
  return "?";
}

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::bad_magic: return "bad-magic";
    case ParseErrorKind::version_mismatch: return "version-mismatch";
    case ParseErrorKind::truncated: return "truncated";
    case ParseErrorKind::invalid: return "invalid";
  }
  return "?";
}

uint32_t pack_index(int v0, int v1, int v2, int v3, int bins) {
  for (int v : {v0, v1, v2, v3})
    if (v < 0 || v >= bins) throw UsageError("pack_index: code " + std::to_string(v) + " outside [0, bins)");
  const uint32_t b = static_cast<uint32_t>(bins);
  return ((static_cast<uint32_t>(v0) * b + v1) * b + v2) * b + v3;
}

std::array<int, 4> unpack_index(uint32_t index, int bins) {
  const uint32_t b = static_cast<uint32_t>(bins);
  std::array<int, 4> v{};
  for (int k = 3; k >= 0; --k) {
    v[k] = static_cast<int>(index % b);
    index /= b;
  }
  return v;
}

LutTable::LutTable(LutKind kind, int bins, int out_ch, int scale_exp)
    : kind_(kind), bins_(bins), out_ch_(out_ch), scale_exp_(scale_exp) {
  if (bins < 2 || bins > 255) throw UsageError("LutTable: bins must be in [2, 255]");
  if (out_ch < 1) throw UsageError("LutTable: out_ch must be positive");
  if (scale_exp < kMinScaleExp || scale_exp > kMaxScaleExp)
    throw UsageError("LutTable: scale_exp " + std::to_string(scale_exp) + " outside [-4, 0]");
  pattern_count_ = static_cast<uint32_t>(bins) * bins * bins * bins;
  entries_.assign(static_cast<size_t>(pattern_count_) * out_ch, 0);
}

std::span<const int8_t> LutTable::lookup(uint32_t index) const {
  if (index >= pattern_count_) throw UsageError("lookup: index " + std::to_string(index) + " out of range");
  return {entries_.data() + static_cast<size_t>(index) * out_ch_, static_cast<size_t>(out_ch_)};
}

std::span<int8_t> LutTable::row(uint32_t index) {
  if (index >= pattern_count_) throw UsageError("row: index " + std::to_string(index) + " out of range");
  return {entries_.data() + static_cast<size_t>(index) * out_ch_, static_cast<size_t>(out_ch_)};
}

}  // namespace splut
