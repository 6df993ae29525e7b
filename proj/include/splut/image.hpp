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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace splut {

// 8-bit RGB, row-major, channel-interleaved.
class Rgb8Image {
 public:
  Rgb8Image() = default;
  Rgb8Image(int width, int height);
  Rgb8Image(int width, int height, std::vector<uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }

  uint8_t at(int x, int y, int c) const { return data_[(static_cast<size_t>(y) * width_ + x) * 3 + c]; }
  uint8_t& at(int x, int y, int c) { return data_[(static_cast<size_t>(y) * width_ + x) * 3 + c]; }

  std::span<const uint8_t> data() const { return data_; }
  std::span<uint8_t> data() { return data_; }

  friend bool operator==(const Rgb8Image&, const Rgb8Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> data_;
};

// Channel-planar stack of 2D planes: values[(c * height + y) * width + x].
template <class T>
struct Planes {
  int channels = 0;
  int width = 0;
  int height = 0;
  std::vector<T> values;

  Planes() = default;
  Planes(int c, int w, int h) : channels(c), width(w), height(h), values(static_cast<size_t>(c) * w * h) {}

  size_t plane_size() const { return static_cast<size_t>(width) * height; }
  std::span<T> channel(int c) { return {values.data() + c * plane_size(), plane_size()}; }
  std::span<const T> channel(int c) const { return {values.data() + c * plane_size(), plane_size()}; }
  T& at(int c, int x, int y) { return values[(static_cast<size_t>(c) * height + y) * width + x]; }
  const T& at(int c, int x, int y) const { return values[(static_cast<size_t>(c) * height + y) * width + x]; }

  friend bool operator==(const Planes&, const Planes&) = default;
};

// Features in fixed-point sixteenths (value 1.0 is stored as 16).
using FeatureMap = Planes<int32_t>;
// LUT query codes.
using CodeMap = Planes<uint8_t>;

inline constexpr int kFracBits = 4;
inline constexpr int32_t kFeatureLimit = 1 << 24;

struct BitplaneImage {
  CodeMap msb;  // 3 channels, R,G,B
  CodeMap lsb;
  int width() const { return msb.width; }
  int height() const { return msb.height; }
};

BitplaneImage split_bitplanes(const Rgb8Image& image);

// Reflect-101 for a one-step overreach: -1 -> 1, len -> len - 2.
int reflect_index(int i, int len);

// round(v / 16), ties away from zero.
constexpr int32_t round_half_away(int32_t v) {
  return v >= 0 ? (v + 8) >> kFracBits : -((-v + 8) >> kFracBits);
}

// clamp(round_half_away(v), 0, bins - 1)
constexpr int32_t quantize_to_bins(int32_t v, int bins) {
  const int32_t r = round_half_away(v);
  return r < 0 ? 0 : (r > bins - 1 ? bins - 1 : r);
}

// s*s channels -> 1 channel of s*W x s*H; out(x*s+dx, y*s+dy) = in[dy*s+dx](x, y).
FeatureMap pixel_shuffle(const FeatureMap& feat);
// Inverse of pixel_shuffle for the given factor.
FeatureMap pixel_unshuffle(const FeatureMap& plane, int scale);

// Antialiased bicubic (a = -0.5) downscale by an integer factor.
Rgb8Image downscale_bicubic(const Rgb8Image& hr, int scale);

// Nearest-neighbour upscale by an integer factor.
Rgb8Image upscale_nearest(const Rgb8Image& lr, int scale);

}  // namespace splut
