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

#include "splut/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splut/errors.hpp"

namespace splut {

Rgb8Image::Rgb8Image(int width, int height)
    : Rgb8Image(width, height, std::vector<uint8_t>(static_cast<size_t>(std::max(width, 0)) * std::max(height, 0) * 3)) {}

Rgb8Image::Rgb8Image(int width, int height, std::vector<uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) throw UsageError("image dimensions must be positive");
  if (data_.size() != static_cast<size_t>(width) * height * 3)
    throw UsageError("image data length " + std::to_string(data_.size()) + " != width*height*3");
}

BitplaneImage split_bitplanes(const Rgb8Image& image) {
  const int w = image.width(), h = image.height();
  BitplaneImage out{CodeMap(3, w, h), CodeMap(3, w, h)};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        const uint8_t p = image.at(x, y, c);
        out.msb.at(c, x, y) = p >> 4;
        out.lsb.at(c, x, y) = p & 15;
      }
  return out;
}

int reflect_index(int i, int len) {
  if (len < 2) throw UsageError("reflect_index: len must be >= 2");
  if (i < -1 || i > len) throw UsageError("reflect_index: index " + std::to_string(i) + " out of contract");
  if (i < 0) return 1;
  if (i == len) return len - 2;
  return i;
}

namespace {

int perfect_square_root(int n) {
  int s = 1;
  while (s * s < n) ++s;
  return s * s == n ? s : -1;
}

}  // namespace

FeatureMap pixel_shuffle(const FeatureMap& feat) {
  const int s = perfect_square_root(feat.channels);
  if (feat.channels < 1 || s < 0) throw UsageError("pixel_shuffle: channel count is not a perfect square");
  FeatureMap out(1, feat.width * s, feat.height * s);
  for (int dy = 0; dy < s; ++dy)
    for (int dx = 0; dx < s; ++dx) {
      const auto src = feat.channel(dy * s + dx);
      for (int y = 0; y < feat.height; ++y)
        for (int x = 0; x < feat.width; ++x)
          out.at(0, x * s + dx, y * s + dy) = src[static_cast<size_t>(y) * feat.width + x];
    }
  return out;
}

FeatureMap pixel_unshuffle(const FeatureMap& plane, int scale) {
  if (plane.channels != 1 || scale < 1 || plane.width % scale || plane.height % scale)
    throw UsageError("pixel_unshuffle: expects one channel with dimensions divisible by the scale");
  FeatureMap out(scale * scale, plane.width / scale, plane.height / scale);
  for (int c = 0; c < out.channels; ++c)
    for (int y = 0; y < out.height; ++y)
      for (int x = 0; x < out.width; ++x)
        out.at(c, x, y) = plane.at(0, x * scale + c % scale, y * scale + c / scale);
  return out;
}

namespace {

double cubic(double x) {
  constexpr double a = -0.5;
  const double ax = std::abs(x);
  if (ax <= 1.0) return (a + 2.0) * ax * ax * ax - (a + 3.0) * ax * ax + 1.0;
  if (ax < 2.0) return a * ax * ax * ax - 5.0 * a * ax * ax + 8.0 * a * ax - 4.0 * a;
  return 0.0;
}

// Symmetric mirroring that repeats the border sample: -1 -> 0, len -> len - 1.
int mirror(int i, int len) {
  const int period = 2 * len;
  i %= period;
  if (i < 0) i += period;
  return i < len ? i : period - 1 - i;
}

struct Taps {
  std::vector<int> index;
  std::vector<double> weight;
};

std::vector<Taps> resample_taps(int in_len, int scale) {
  const int out_len = in_len / scale;
  const double width = 4.0 * scale;
  std::vector<Taps> taps(out_len);
  for (int i = 0; i < out_len; ++i) {
    const double center = (i + 0.5) * scale - 0.5;
    const int first = static_cast<int>(std::floor(center - width / 2));
    const int count = static_cast<int>(std::ceil(width)) + 2;
    double sum = 0.0;
    for (int k = 0; k < count; ++k) {
      const int j = first + k;
      const double w = cubic((center - j) / scale) / scale;
      if (w == 0.0) continue;
      taps[i].index.push_back(mirror(j, in_len));
      taps[i].weight.push_back(w);
      sum += w;
    }
    for (double& w : taps[i].weight) w /= sum;
  }
  return taps;
}

}  // namespace

Rgb8Image downscale_bicubic(const Rgb8Image& hr, int scale) {
  if (scale < 1 || hr.width() % scale || hr.height() % scale)
    throw UsageError("downscale_bicubic: dimensions must be divisible by the scale factor");
  if (scale == 1) return hr;
  const int ow = hr.width() / scale, oh = hr.height() / scale;
  const auto tx = resample_taps(hr.width(), scale);
  const auto ty = resample_taps(hr.height(), scale);

  std::vector<double> rows(static_cast<size_t>(hr.height()) * ow * 3);
  for (int y = 0; y < hr.height(); ++y)
    for (int x = 0; x < ow; ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (size_t k = 0; k < tx[x].index.size(); ++k) acc += tx[x].weight[k] * hr.at(tx[x].index[k], y, c);
        rows[(static_cast<size_t>(y) * ow + x) * 3 + c] = acc;
      }

  Rgb8Image out(ow, oh);
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (size_t k = 0; k < ty[y].index.size(); ++k)
          acc += ty[y].weight[k] * rows[(static_cast<size_t>(ty[y].index[k]) * ow + x) * 3 + c];
        out.at(x, y, c) = static_cast<uint8_t>(std::clamp(std::round(acc), 0.0, 255.0));
      }
  return out;
}

Rgb8Image upscale_nearest(const Rgb8Image& lr, int scale) {
  if (scale < 1) throw UsageError("upscale_nearest: scale must be positive");
  Rgb8Image out(lr.width() * scale, lr.height() * scale);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x)
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = lr.at(x / scale, y / scale, c);
  return out;
}

}  // namespace splut
