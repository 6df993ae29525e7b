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

#include <cmath>
#include <set>

#include "splut/engine.hpp"
#include "splut/errors.hpp"
#include "splut/mapping.hpp"
#include "splut/reference.hpp"
#include "splut/rng.hpp"
#include "splut/weights.hpp"
#include "test_util.hpp"

using namespace splut;

namespace {

// Double-precision forward pass written from the layer definition.
std::vector<double> forward_oracle(const MappingModule& m, const std::array<double, 4>& p) {
  std::vector<double> x(p.begin(), p.end());
  for (size_t k = 0; k < m.layers.size(); ++k) {
    const auto& l = m.layers[k];
    std::vector<double> y(l.rows);
    for (int r = 0; r < l.rows; ++r) {
      double acc = l.bias[r];
      for (int c = 0; c < l.cols; ++c) acc += static_cast<double>(l.w(r, c)) * x[c];
      y[r] = k + 1 < m.layers.size() ? 0.5 * acc * (1 + std::tanh(std::sqrt(2 / M_PI) * (acc + 0.044715 * acc * acc * acc)))
                                     : acc;
    }
    x = std::move(y);
  }
  return x;
}

std::vector<float> forward(const MappingModule& m, int a, int b, int c, int d) {
  const std::array<float, 4> p{float(a), float(b), float(c), float(d)};
  return mapping_forward(m, p);
}

}  // namespace

TEST_CASE("gelu") {
  CHECK(gelu(0.0f) == 0.0f);
  CHECK(gelu(10.0f) == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(gelu(-10.0f) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(gelu(1.0f) == doctest::Approx(0.841192).epsilon(1e-5));
  float prev = gelu(-0.5f);
  for (int i = -49; i <= 800; ++i) {
    const float x = i / 100.0f;
    const float g = gelu(x);
    REQUIRE(g >= prev);
    const double xd = x;
    REQUIRE(g == doctest::Approx(0.5 * xd * (1 + std::tanh(std::sqrt(2 / M_PI) * (xd + 0.044715 * xd * xd * xd))))
                     .epsilon(1e-5));
    prev = g;
  }
}

TEST_CASE("module geometry") {
  CHECK(module_geometry(LutKind::wh) == std::array<int, 3>{2, 2, 1});
  CHECK(module_geometry(LutKind::wc) == std::array<int, 3>{1, 2, 2});
  CHECK(module_geometry(LutKind::hc) == std::array<int, 3>{2, 1, 2});
  for (auto k : {LutKind::wh, LutKind::wc, LutKind::hc}) CHECK(module_kind(MappingModule::zeros(k, 3)) == k);
  auto m = MappingModule::zeros(LutKind::wc, 4);
  m.layers[1] = DenseLayer(64, 63);
  CHECK_THROWS_AS(m.validate(), UsageError);
}

TEST_CASE("mapping_forward") {
  SUBCASE("zero weights") {
    const auto m = MappingModule::zeros(LutKind::wh, 5);
    for (auto v : forward(m, 1, 2, 3, 4)) CHECK(v == 0.0f);
  }
  SUBCASE("output bias passes straight through") {
    auto m = MappingModule::zeros(LutKind::hc, 3);
    m.layers[3].bias = {1.5f, -2.0f, 0.25f};
    CHECK(forward(m, 9, 9, 0, 1) == std::vector<float>{1.5f, -2.0f, 0.25f});
  }
  SUBCASE("head sees the pattern in order") {
    // One hidden unit per pattern position, large enough that GELU is ~identity,
    // routed to the output with unit weights: out[k] = gelu(gelu(gelu(p_k + 100))) - 100.
    auto m = MappingModule::zeros(LutKind::wh, 4);
    for (int k = 0; k < 4; ++k) {
      m.layers[0].w(k, k) = 1.0f;
      m.layers[0].bias[k] = 100.0f;
      m.layers[1].w(k, k) = 1.0f;
      m.layers[2].w(k, k) = 1.0f;
      m.layers[3].w(k, k) = 1.0f;
      m.layers[3].bias[k] = -100.0f;
    }
    const auto y = forward(m, 3, 0, 7, 12);
    CHECK(y[0] == doctest::Approx(3.0));
    CHECK(y[1] == doctest::Approx(0.0));
    CHECK(y[2] == doctest::Approx(7.0));
    CHECK(y[3] == doctest::Approx(12.0));
  }
  SUBCASE("random modules match the double-precision oracle") {
    const auto w = random_weights(builtin_topology("M"), 4);
    SplitMix64 rng(1);
    for (int stage = 0; stage < 3; ++stage) {
      const auto& m = w.module(Branch::lsb, stage, 0);
      MappingEvaluator eval(m);
      std::vector<float> out(m.out_ch);
      for (int k = 0; k < 50; ++k) {
        const int a = rng.next_int(0, 15), b = rng.next_int(0, 15), c = rng.next_int(0, 15), d = rng.next_int(0, 15);
        const auto got = forward(m, a, b, c, d);
        const auto want = forward_oracle(m, {double(a), double(b), double(c), double(d)});
        for (int o = 0; o < m.out_ch; ++o) REQUIRE(got[o] == doctest::Approx(want[o]).epsilon(1e-4).scale(1.0));
        const std::array<float, 4> p{float(a), float(b), float(c), float(d)};
        eval.forward(p, out);
        REQUIRE(out == got);  // bit-identical
      }
    }
  }
  SUBCASE("smooth in its inputs") {
    const auto w = random_weights(builtin_topology("S"), 9);
    const auto& m = w.module(Branch::msb, 1, 0);
    const std::array<float, 4> p{3, 4, 5, 6};
    const auto y0 = mapping_forward(m, p);
    for (int k = 0; k < 4; ++k) {
      auto q = p;
      q[k] += 1e-3f;
      const auto y1 = mapping_forward(m, q);
      for (size_t o = 0; o < y0.size(); ++o) REQUIRE(std::fabs(y1[o] - y0[o]) < 0.1);
    }
  }
}

TEST_CASE("quantize_entry") {
  CHECK(quantize_entry(1.0f, -4) == 16);
  CHECK(quantize_entry(7.96875f, -4) == 127);
  CHECK(quantize_entry(8.03125f, -4) == 127);
  CHECK(quantize_entry(-8.0f, -4) == -128);
  CHECK(quantize_entry(-9.0f, -4) == -128);
  CHECK(quantize_entry(0.03125f, -4) == 1);
  CHECK(quantize_entry(-0.03125f, -4) == -1);
  CHECK(quantize_entry(0.03f, -4) == 0);
  CHECK(quantize_entry(0.25f, -1) == 1);
  CHECK(quantize_entry(3.2f, -1) == 6);
  CHECK(quantize_entry(100.0f, 0) == 100);
}

TEST_CASE("transfer_to_lut") {
  SUBCASE("zero module") {
    const auto t = transfer_to_lut(MappingModule::zeros(LutKind::wh, 4), 16, -4);
    CHECK(t.kind() == LutKind::wh);
    CHECK(t.out_channels() == 4);
    CHECK(std::all_of(t.entries().begin(), t.entries().end(), [](int8_t e) { return e == 0; }));
  }
  SUBCASE("constant bias") {
    auto m = MappingModule::zeros(LutKind::wc, 2);
    m.layers[3].bias = {1.0f, 8.03125f};
    const auto fine = transfer_to_lut(m, 8, -4);
    const auto coarse = transfer_to_lut(m, 8, -1);
    for (uint32_t i = 0; i < fine.pattern_count(); ++i) {
      REQUIRE(fine.lookup(i)[0] == 16);
      REQUIRE(fine.lookup(i)[1] == 127);
      REQUIRE(coarse.lookup(i)[0] == 2);
      REQUIRE(coarse.lookup(i)[1] == 16);
    }
  }
  SUBCASE("exhaustive at V = 8 and partition independent") {
    const auto w = random_weights(builtin_topology("M", 8), 12);
    const auto& m = w.module(Branch::msb, 2, 1);
    const auto t = transfer_to_lut(m, 8, -1);
    CHECK(t.kind() == LutKind::hc);
    for (uint32_t i = 0; i < t.pattern_count(); ++i) {
      const auto v = unpack_index(i, 8);
      const auto y = forward(m, v[0], v[1], v[2], v[3]);
      for (int c = 0; c < m.out_ch; ++c) REQUIRE(t.lookup(i)[c] == quantize_entry(y[c], -1));
    }
    CHECK(transfer_to_lut(m, 8, -1, 3) == t);
  }
  SUBCASE("random modules fill the entry range") {
    const auto w = random_weights(builtin_topology("S", 8), 2);
    const auto t = transfer_to_lut(w.module(Branch::msb, 1, 0), 8, -4);
    std::set<int> distinct(t.entries().begin(), t.entries().end());
    CHECK(distinct.size() > 64);
  }
}

TEST_CASE("weight sets") {
  const auto topo = builtin_topology("S");
  const auto w = random_weights(topo, 1);
  CHECK_NOTHROW(w.validate());
  CHECK(w.module_count() == 2 * topo.table_shapes().size());
  CHECK(random_weights(topo, 1) == w);
  CHECK(!(random_weights(topo, 2) == w));
  CHECK(zero_weights(topo).module(Branch::lsb, 2, 1) == MappingModule::zeros(LutKind::hc, 16));

  const auto bytes = serialize_weights(w);
  SUBCASE("round trip") {
    CHECK(parse_weights(bytes) == w);
    CHECK(serialize_weights(parse_weights(bytes)) == bytes);
    TempDir dir;
    save_weights(dir.path / "w.spw", w);
    CHECK(load_weights(dir.path / "w.spw") == w);
  }
  SUBCASE("truncated, wrong magic, wrong version") {
    std::vector<uint8_t> cut(bytes.begin(), bytes.end() - 3);
    CHECK_THROWS_AS(parse_weights(cut), ParseError);
    auto b = bytes;
    b[1] = 'X';
    CHECK_THROWS_AS(parse_weights(b), ParseError);
    b = bytes;
    b[4] = 9;
    CHECK_THROWS_AS(parse_weights(b), ParseError);
  }
  SUBCASE("layer shape disagreeing with the module header") {
    // Weights and containers share the prefix layout up to the record count.
    const auto z = serialize_container(zero_container(topo));
    const size_t first = z.size() - zero_container(topo).payload_size() - 8 * 2 * topo.table_shapes().size();
    auto b = bytes;
    REQUIRE(b[first + 3] == 2);  // kh of the spatial module
    REQUIRE(b[first + 11] == 4);  // cols of the head layer
    b[first + 11] = 5;
    try {
      parse_weights(b);
      FAIL("accepted bad layer shape");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::invalid);
    }
  }
  SUBCASE("weights need a matching topology") {
    auto broken = w;
    broken.modules[0][1].pop_back();
    CHECK_THROWS_AS(broken.validate(), UsageError);
    CHECK_THROWS_AS(serialize_weights(broken), UsageError);
  }
}

TEST_CASE("build_container") {
  const auto topo = builtin_topology("M", 8);
  CHECK(build_container(zero_weights(topo)) == zero_container(topo));
  const auto w = random_weights(topo, 6);
  const auto c = build_container(w, 1);
  CHECK_NOTHROW(c.validate());
  CHECK(c.table(Branch::msb, 0, 0).scale_exp() == kDefaultScaleExp);
  CHECK(c.table(Branch::lsb, 1, 1).scale_exp() == kDefaultScaleExp);
  CHECK(c.table(Branch::lsb, 2, 0).scale_exp() == kFinalScaleExp);
  CHECK(build_container(w, 3) == c);
  CHECK(c.table(Branch::msb, 1, 0) == transfer_to_lut(w.module(Branch::msb, 1, 0), 8, kDefaultScaleExp));
}

TEST_CASE("reference pipeline") {
  SUBCASE("zero weights reproduce nearest-neighbour upscaling") {
    const auto img = random_image(5, 4, 2);
    CHECK(reference_pipeline(img, zero_weights(builtin_topology("S", 8))) == upscale_nearest(img, 4));
  }
  SUBCASE("matches the engine") {
    uint64_t seed = 30;
    for (const char* v : {"S", "M", "1-2"}) {
      const auto w = random_weights(builtin_topology(v, 8), ++seed);
      const auto c = build_container(w);
      for (int k = 0; k < 4; ++k) {
        const auto img = random_image(3 + k * 3, 2 + k * 2, ++seed);
        CAPTURE(v);
        CHECK(reference_pipeline(img, w) == super_resolve(img, c, {Backend::serial, 1}));
        CHECK(reference_pipeline(img, w) == super_resolve(img, c, {Backend::parallel, 2}));
      }
    }
  }
  SUBCASE("skipping entry quantization is detected") {
    const auto w = random_weights(builtin_topology("S", 8), 8);
    const auto c = build_container(w);
    int differing = 0;
    for (uint64_t s = 0; s < 4; ++s) {
      const auto img = random_image(8, 8, s);
      differing += !(reference_pipeline(img, w, {.quantize_entries = false}) == super_resolve(img, c));
    }
    CHECK(differing > 0);
  }
}
