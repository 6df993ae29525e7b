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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "splut/errors.hpp"
#include "splut/image.hpp"
#include "splut/png_io.hpp"
#include "splut/rng.hpp"
#include "test_util.hpp"

using namespace splut;

TEST_CASE("rgb8 image validates its shape") {
  CHECK_THROWS_AS(Rgb8Image(0, 3), UsageError);
  CHECK_THROWS_AS(Rgb8Image(2, 2, std::vector<uint8_t>(11)), UsageError);
  Rgb8Image img(2, 1, {1, 2, 3, 4, 5, 6});
  CHECK(img.at(1, 0, 2) == 6);
  CHECK(img.at(0, 0, 1) == 2);
}

TEST_CASE("split_bitplanes examples") {
  Rgb8Image img(1, 1, {0xB7, 0x00, 0xFF});
  const auto bp = split_bitplanes(img);
  CHECK(bp.msb.channels == 3);
  CHECK(bp.msb.at(0, 0, 0) == 0xB);
  CHECK(bp.lsb.at(0, 0, 0) == 0x7);
  CHECK(bp.msb.at(1, 0, 0) == 0);
  CHECK(bp.lsb.at(1, 0, 0) == 0);
  CHECK(bp.msb.at(2, 0, 0) == 15);
  CHECK(bp.lsb.at(2, 0, 0) == 15);
}

TEST_CASE("split_bitplanes reconstructs every byte value") {
  Rgb8Image img(256, 1);
  for (int p = 0; p < 256; ++p)
    for (int c = 0; c < 3; ++c) img.at(p, 0, c) = static_cast<uint8_t>(c == 1 ? 255 - p : p);
  const auto bp = split_bitplanes(img);
  for (int c = 0; c < 3; ++c)
    for (int x = 0; x < 256; ++x) {
      const int hi = bp.msb.at(c, x, 0), lo = bp.lsb.at(c, x, 0);
      REQUIRE(hi < 16);
      REQUIRE(lo < 16);
      REQUIRE(16 * hi + lo == img.at(x, 0, c));
    }
}

TEST_CASE("reflect_index") {
  CHECK(reflect_index(-1, 5) == 1);
  CHECK(reflect_index(5, 5) == 3);
  CHECK(reflect_index(0, 5) == 0);
  CHECK(reflect_index(4, 5) == 4);
  CHECK(reflect_index(2, 2) == 0);
  CHECK(reflect_index(-1, 2) == 1);
  CHECK_THROWS_AS(reflect_index(-2, 5), UsageError);
  CHECK_THROWS_AS(reflect_index(6, 5), UsageError);
  CHECK_THROWS_AS(reflect_index(0, 1), UsageError);
  // Property: result is in range and equals the mirror of the overreach.
  for (int len = 2; len < 12; ++len)
    for (int i = -1; i <= len; ++i) {
      const int r = reflect_index(i, len);
      REQUIRE(r >= 0);
      REQUIRE(r < len);
      if (i >= 0 && i < len) REQUIRE(r == i);
    }
}

TEST_CASE("round_half_away and quantize_to_bins") {
  CHECK(round_half_away(24) == 2);
  CHECK(round_half_away(-24) == -2);
  CHECK(round_half_away(23) == 1);
  CHECK(round_half_away(8) == 1);
  CHECK(round_half_away(7) == 0);
  CHECK(round_half_away(-8) == -1);
  CHECK(round_half_away(-7) == 0);
  CHECK(quantize_to_bins(-40, 16) == 0);
  CHECK(quantize_to_bins(1000, 16) == 15);
  CHECK(quantize_to_bins(232, 16) == 15);
  CHECK(quantize_to_bins(231, 16) == 14);
  CHECK(quantize_to_bins(100, 8) == 6);

  int prev = quantize_to_bins(-5000, 12);
  for (int v = -5000; v <= 5000; ++v) {
    // Oracle: std::round also rounds halves away from zero.
    REQUIRE(round_half_away(v) == static_cast<int>(std::round(v / 16.0)));
    const int q = quantize_to_bins(v, 12);
    REQUIRE(q >= 0);
    REQUIRE(q <= 11);
    REQUIRE(q >= prev);
    prev = q;
  }
}

TEST_CASE("pixel_shuffle trivial and 2x2 examples") {
  FeatureMap one(1, 3, 2);
  for (int i = 0; i < 6; ++i) one.values[i] = i * 7;
  CHECK(pixel_shuffle(one) == one);

  FeatureMap f(4, 1, 1);
  f.values = {10, 20, 30, 40};
  const auto out = pixel_shuffle(f);
  CHECK(out.width == 2);
  CHECK(out.height == 2);
  CHECK(out.values == std::vector<int32_t>{10, 20, 30, 40});

  FeatureMap bad(3, 2, 2);
  CHECK_THROWS_AS(pixel_shuffle(bad), UsageError);
}

TEST_CASE("pixel_shuffle matches an inverse-index oracle and round-trips") {
  SplitMix64 rng(11);
  for (int s : {2, 3, 4}) {
    const int w = rng.next_int(1, 7), h = rng.next_int(1, 7);
    FeatureMap f(s * s, w, h);
    for (auto& v : f.values) v = rng.next_int(-100000, 100000);
    const auto out = pixel_shuffle(f);
    REQUIRE(out.channels == 1);
    REQUIRE(out.width == s * w);
    REQUIRE(out.height == s * h);
    // For every output pixel, work backwards to its source.
    for (int Y = 0; Y < s * h; ++Y)
      for (int X = 0; X < s * w; ++X) REQUIRE(out.at(0, X, Y) == f.at((Y % s) * s + X % s, X / s, Y / s));
    // Same multiset of values.
    auto a = f.values, b = out.values;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    REQUIRE(a == b);
    REQUIRE(pixel_unshuffle(out, s) == f);
  }
}

// Direct 2D evaluation of antialiased bicubic downscaling (a = -0.5), used as
// an oracle for the separable implementation.
static double cubic(double x) {
  const double a = -0.5, t = std::fabs(x);
  if (t <= 1) return (a + 2) * t * t * t - (a + 3) * t * t + 1;
  if (t < 2) return a * t * t * t - 5 * a * t * t + 8 * a * t - 4 * a;
  return 0;
}

static int mirror(int i, int n) {
  while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - 1 - i;
  return i;
}

static double bicubic_oracle(const Rgb8Image& hr, int s, int ox, int oy, int c) {
  const double ux = (ox + 0.5) * s - 0.5, uy = (oy + 0.5) * s - 0.5;
  double acc = 0, norm = 0;
  for (int j = static_cast<int>(std::floor(uy)) - 2 * s - 1; j <= static_cast<int>(std::ceil(uy)) + 2 * s + 1; ++j)
    for (int i = static_cast<int>(std::floor(ux)) - 2 * s - 1; i <= static_cast<int>(std::ceil(ux)) + 2 * s + 1;
         ++i) {
      const double wgt = cubic((ux - i) / s) * cubic((uy - j) / s);
      acc += wgt * hr.at(mirror(i, hr.width()), mirror(j, hr.height()), c);
      norm += wgt;
    }
  return acc / norm;
}

TEST_CASE("bicubic downscale") {
  SUBCASE("constant image stays constant") {
    Rgb8Image img(16, 8);
    for (auto& v : img.data()) v = 77;
    const auto lr = downscale_bicubic(img, 4);
    CHECK(lr.width() == 4);
    CHECK(lr.height() == 2);
    for (auto v : lr.data()) CHECK(v == 77);
  }
  SUBCASE("factor one is the identity") {
    const auto img = random_image(5, 3, 2);
    CHECK(downscale_bicubic(img, 1) == img);
  }
  SUBCASE("indivisible sizes are rejected") {
    CHECK_THROWS_AS(downscale_bicubic(Rgb8Image(10, 8), 4), UsageError);
  }
  SUBCASE("matches the direct 2D sum") {
    Rgb8Image ramp(8, 8);
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x) {
        ramp.at(x, y, 0) = static_cast<uint8_t>(x * 30);
        ramp.at(x, y, 1) = static_cast<uint8_t>(y * 30);
        ramp.at(x, y, 2) = static_cast<uint8_t>((x * 13 + y * 17) % 256);
      }
    for (const auto& img : {ramp, random_image(16, 12, 5)})
      for (int s : {2, 4}) {
        const auto lr = downscale_bicubic(img, s);
        for (int y = 0; y < lr.height(); ++y)
          for (int x = 0; x < lr.width(); ++x)
            for (int c = 0; c < 3; ++c) {
              const double want = std::clamp(bicubic_oracle(img, s, x, y, c), 0.0, 255.0);
              REQUIRE(std::fabs(lr.at(x, y, c) - want) <= 0.5 + 1e-9);
            }
      }
  }
}

TEST_CASE("upscale_nearest") {
  Rgb8Image img(2, 1, {1, 2, 3, 4, 5, 6});
  const auto up = upscale_nearest(img, 2);
  CHECK(up.width() == 4);
  CHECK(up.height() == 2);
  CHECK(up.at(1, 1, 2) == 3);
  CHECK(up.at(2, 0, 0) == 4);
}

static void write_raw_png(const std::filesystem::path& p, int w, int h, uint32_t format,
                          const std::vector<uint8_t>& px) {
  png_image im{};
  im.version = PNG_IMAGE_VERSION;
  im.width = w;
  im.height = h;
  im.format = format;
  REQUIRE(png_image_write_to_file(&im, p.c_str(), 0, px.data(), 0, nullptr));
}

TEST_CASE("png io") {
  TempDir dir;
  SUBCASE("rgb round trip") {
    const auto img = random_image(13, 7, 4);
    write_png(dir.path / "a.png", img);
    CHECK(read_png(dir.path / "a.png") == img);
  }
  SUBCASE("gray is replicated and alpha dropped") {
    write_raw_png(dir.path / "g.png", 2, 1, PNG_FORMAT_GRAY, {9, 200});
    const auto g = read_png(dir.path / "g.png");
    CHECK(g == Rgb8Image(2, 1, {9, 9, 9, 200, 200, 200}));
    write_raw_png(dir.path / "ra.png", 1, 1, PNG_FORMAT_RGBA, {1, 2, 3, 255});
    CHECK(read_png(dir.path / "ra.png") == Rgb8Image(1, 1, {1, 2, 3}));
  }
  SUBCASE("missing or garbage files") {
    CHECK_THROWS_AS(read_png(dir.path / "none.png"), IoError);
    const std::vector<uint8_t> junk{1, 2, 3, 4};
    write_file(dir.path / "j.png", junk);
    CHECK_THROWS_AS(read_png(dir.path / "j.png"), IoError);
  }
}
