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

#include "splut/metrics.hpp"

#include <cmath>
#include <limits>

#include "splut/errors.hpp"

namespace splut {

const char* to_string(ChannelMode mode) { return mode == ChannelMode::y ? "Y" : "RGB"; }

ChannelMode parse_channel_mode(const std::string& s) {
  if (s == "Y" || s == "y") return ChannelMode::y;
  if (s == "RGB" || s == "rgb") return ChannelMode::rgb;
  throw UsageError("unknown channel mode '" + s + "' (expected Y or RGB)");
}

double luma(uint8_t r, uint8_t g, uint8_t b) { return 16.0 + (65.738 * r + 129.057 * g + 25.064 * b) / 256.0; }

namespace {

struct Plane {
  int width = 0, height = 0;
  std::vector<double> v;
  double at(int x, int y) const { return v[static_cast<size_t>(y) * width + x]; }
};

// Cropped planes: one Y plane, or R, G, B.
std::vector<Plane> planes(const Rgb8Image& img, ChannelMode mode, int crop) {
  const int w = img.width() - 2 * crop, h = img.height() - 2 * crop;
  std::vector<Plane> out(mode == ChannelMode::y ? 1 : 3, Plane{w, h, std::vector<double>(static_cast<size_t>(w) * h)});
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int sx = x + crop, sy = y + crop;
      const size_t i = static_cast<size_t>(y) * w + x;
      if (mode == ChannelMode::y) {
        out[0].v[i] = luma(img.at(sx, sy, 0), img.at(sx, sy, 1), img.at(sx, sy, 2));
      } else {
        for (int c = 0; c < 3; ++c) out[c].v[i] = img.at(sx, sy, c);
      }
    }
  return out;
}

void check_pair(const Rgb8Image& a, const Rgb8Image& b, int crop) {
  if (a.width() != b.width() || a.height() != b.height()) throw UsageError("metric: image dimensions differ");
  if (crop < 0 || 2 * crop >= std::min(a.width(), a.height()))
    throw UsageError("metric: crop must be below half the smallest dimension");
}

constexpr int kWindow = 11;

std::array<double, kWindow> gaussian_window() {
  std::array<double, kWindow> g{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    g[i] = std::exp(-(d * d) / (2.0 * 1.5 * 1.5));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

// Valid-region separable Gaussian filter.
Plane filter(const Plane& p) {
  static const auto g = gaussian_window();
  const int ow = p.width - kWindow + 1, oh = p.height - kWindow + 1;
  Plane rows{ow, p.height, std::vector<double>(static_cast<size_t>(ow) * p.height)};
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += g[k] * p.at(x + k, y);
      rows.v[static_cast<size_t>(y) * ow + x] = acc;
    }
  Plane out{ow, oh, std::vector<double>(static_cast<size_t>(ow) * oh)};
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += g[k] * rows.at(x, y + k);
      out.v[static_cast<size_t>(y) * ow + x] = acc;
    }
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  Plane p{a.width, a.height, std::vector<double>(a.v.size())};
  for (size_t i = 0; i < a.v.size(); ++i) p.v[i] = a.v[i] * b.v[i];
  return p;
}

double ssim_plane(const Plane& a, const Plane& b) {
  constexpr double c1 = (0.01 * 255) * (0.01 * 255);
  constexpr double c2 = (0.03 * 255) * (0.03 * 255);
  const Plane mu_a = filter(a), mu_b = filter(b);
  const Plane aa = filter(product(a, a)), bb = filter(product(b, b)), ab = filter(product(a, b));
  double sum = 0.0;
  for (size_t i = 0; i < mu_a.v.size(); ++i) {
    const double ma = mu_a.v[i], mb = mu_b.v[i];
    const double va = aa.v[i] - ma * ma, vb = bb.v[i] - mb * mb, cov = ab.v[i] - ma * mb;
    sum += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return sum / static_cast<double>(mu_a.v.size());
}

}  // namespace

double psnr(const Rgb8Image& a, const Rgb8Image& b, ChannelMode mode, int crop) {
  check_pair(a, b, crop);
  const auto pa = planes(a, mode, crop), pb = planes(b, mode, crop);
  double sum = 0.0;
  size_t n = 0;
  for (size_t c = 0; c < pa.size(); ++c)
    for (size_t i = 0; i < pa[c].v.size(); ++i, ++n) {
      const double d = pa[c].v[i] - pb[c].v[i];
      sum += d * d;
    }
  const double mse = sum / static_cast<double>(n);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const Rgb8Image& a, const Rgb8Image& b, ChannelMode mode, int crop) {
  check_pair(a, b, crop);
  if (a.width() - 2 * crop < kWindow || a.height() - 2 * crop < kWindow)
    throw UsageError("ssim: images must be at least 11x11 after cropping");
  const auto pa = planes(a, mode, crop), pb = planes(b, mode, crop);
  double sum = 0.0;
  for (size_t c = 0; c < pa.size(); ++c) sum += ssim_plane(pa[c], pb[c]);
  return sum / static_cast<double>(pa.size());
}

std::string format_psnr(double db) {
  if (std::isinf(db)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", db);
  return buf;
}

}  // namespace splut
