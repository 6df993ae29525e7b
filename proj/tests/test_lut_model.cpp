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

#include <set>

#include "splut/container.hpp"
#include "splut/errors.hpp"
#include "splut/lut.hpp"
#include "splut/rng.hpp"
#include "splut/topology.hpp"
#include "test_util.hpp"

using namespace splut;

TEST_CASE("pack_index examples") {
  CHECK(pack_index(0, 0, 0, 0, 16) == 0u);
  CHECK(pack_index(15, 15, 15, 15, 16) == 65535u);
  CHECK(pack_index(1, 2, 3, 4, 16) == 4660u);
  CHECK(pack_index(1, 0, 0, 0, 8) == 512u);
  CHECK(pack_index(0, 0, 1, 2, 12) == 14u);
  CHECK(unpack_index(4660, 16) == std::array<int, 4>{1, 2, 3, 4});
  CHECK_THROWS_AS(pack_index(16, 0, 0, 0, 16), UsageError);
  CHECK_THROWS_AS(pack_index(0, 0, 0, -1, 16), UsageError);
}

TEST_CASE("pack_index is a bijection onto [0, V^4)") {
  SUBCASE("exhaustive at V = 8") {
    std::vector<bool> seen(8 * 8 * 8 * 8);
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        for (int c = 0; c < 8; ++c)
          for (int d = 0; d < 8; ++d) {
            const uint32_t i = pack_index(a, b, c, d, 8);
            REQUIRE(i < seen.size());
            REQUIRE(!seen[i]);
            seen[i] = true;
            REQUIRE(unpack_index(i, 8) == std::array<int, 4>{a, b, c, d});
          }
  }
  SUBCASE("sampled at V = 16 and 24") {
    SplitMix64 rng(3);
    for (int bins : {16, 24}) {
      std::set<uint32_t> seen;
      std::set<std::array<int, 4>> patterns;
      for (int k = 0; k < 5000; ++k) {
        const std::array<int, 4> p{rng.next_int(0, bins - 1), rng.next_int(0, bins - 1), rng.next_int(0, bins - 1),
                                   rng.next_int(0, bins - 1)};
        const uint32_t i = pack_index(p[0], p[1], p[2], p[3], bins);
        REQUIRE(i < static_cast<uint32_t>(bins * bins * bins * bins));
        REQUIRE(unpack_index(i, bins) == p);
        patterns.insert(p);
        seen.insert(i);
      }
      CHECK(seen.size() == patterns.size());
    }
  }
}

TEST_CASE("lut table construction and lookup") {
  CHECK_THROWS_AS(LutTable(LutKind::wh, 1, 4, -4), UsageError);
  CHECK_THROWS_AS(LutTable(LutKind::wh, 16, 0, -4), UsageError);
  CHECK_THROWS_AS(LutTable(LutKind::wh, 16, 4, 1), UsageError);
  CHECK_THROWS_AS(LutTable(LutKind::wh, 16, 4, -5), UsageError);

  LutTable t(LutKind::wc, 8, 3, -2);
  CHECK(t.pattern_count() == 4096u);
  CHECK(t.entries().size() == 4096u * 3);
  CHECK(t.feature_shift() == 2);
  for (auto v : t.lookup(17)) CHECK(v == 0);
  CHECK_THROWS_AS(t.lookup(4096), UsageError);

  t.row(pack_index(1, 2, 3, 4, 8))[2] = -7;
  CHECK(t.lookup(pack_index(1, 2, 3, 4, 8))[2] == -7);
  CHECK(t.lookup(pack_index(1, 2, 3, 4, 8))[1] == 0);
  CHECK(t.lookup(pack_index(1, 2, 3, 5, 8))[2] == 0);

  // Random table, random indices: lookup(i)[c] is entries[i * out_ch + c].
  SplitMix64 rng(9);
  LutTable r(LutKind::hc, 16, 5, -4);
  for (auto& e : r.entries()) e = static_cast<int8_t>(rng.next_int(-128, 127));
  for (int k = 0; k < 1000; ++k) {
    const int a = rng.next_int(0, 15), b = rng.next_int(0, 15), c = rng.next_int(0, 15), d = rng.next_int(0, 15);
    const size_t flat = ((static_cast<size_t>(a) * 16 + b) * 16 + c) * 16 + d;
    const auto row = r.lookup(pack_index(a, b, c, d, 16));
    REQUIRE(row.size() == 5u);
    for (int ch = 0; ch < 5; ++ch) REQUIRE(row[ch] == r.entries()[flat * 5 + ch]);
  }
}

TEST_CASE("builtin topologies") {
  for (const auto& v : builtin_variants()) {
    const auto t = builtin_topology(v);
    CAPTURE(v);
    CHECK_NOTHROW(t.validate());
    CHECK(t.scale == 4);
    CHECK(t.name == "SPLUT-" + v);
    CHECK(builtin_topology("SPLUT-" + v) == t);
    CHECK(std::holds_alternative<SpatialBlock>(t.blocks[0]));
    const auto shapes = t.table_shapes();
    CHECK(shapes.front().kind == LutKind::wh);
    CHECK(shapes.front().bins == kSpatialBins);
    for (size_t i = 1; i < shapes.size(); ++i) {
      CHECK(shapes[i].kind != LutKind::wh);
      CHECK(shapes[i].bins == 16);
      if (t.is_final_stage(shapes[i].stage)) {
        CHECK(shapes[i].out_ch == 16);
        CHECK(shapes[i].scale_exp == kFinalScaleExp);
      } else {
        CHECK(shapes[i].out_ch == t.feature_channels);
        CHECK(shapes[i].scale_exp == kDefaultScaleExp);
      }
    }
  }
  CHECK(builtin_topology("S").feature_channels == 4);
  CHECK(builtin_topology("M").feature_channels == 8);
  CHECK(builtin_topology("L").feature_channels == 16);
  CHECK(builtin_topology("1-2").stage_count() == 2);
  CHECK(builtin_topology("M").stage_count() == 3);
  CHECK_THROWS_AS(builtin_topology("XL"), UsageError);
  CHECK_THROWS_AS(builtin_topology("M", 10), UsageError);
  for (int v : {8, 12, 16, 20, 24}) CHECK(is_supported_query_bins(v));
  CHECK(!is_supported_query_bins(32));

  auto broken = builtin_topology("M");
  std::get<QueryBlock>(broken.blocks[1]).aggregations[0].group_b = 9;
  CHECK_THROWS_AS(broken.validate(), UsageError);
}

TEST_CASE("storage sizes") {
  CHECK(container_payload_size(builtin_topology("S")) == 5767168u);
  CHECK(container_payload_size(builtin_topology("M")) == 7340032u);
  CHECK(container_payload_size(builtin_topology("L")) == 18874368u);
  CHECK(container_payload_size(builtin_topology("1-2")) == 5242880u);
  CHECK(container_payload_size(builtin_topology("1-4")) == 10485760u);
  CHECK(container_payload_size(builtin_topology("M", 8)) == 1441792u);
  CHECK(container_payload_size(builtin_topology("M", 12)) == 3039232u);
  CHECK(container_payload_size(builtin_topology("M", 20)) == 16408576u);
  CHECK(container_payload_size(builtin_topology("M", 24)) == 32899072u);

  // Closed form: 2 * (16^4 * C_f + v_f^4 * sum of query-table widths).
  for (const auto& v : builtin_variants())
    for (int vf : {8, 12, 16, 20, 24}) {
      const auto t = builtin_topology(v, vf);
      uint64_t widths = 0;
      for (int s = 1; s < t.stage_count(); ++s)
        for (const auto& l : t.query_block(s).luts) widths += l.out_ch;
      const uint64_t v4 = static_cast<uint64_t>(vf) * vf * vf * vf;
      CHECK(container_payload_size(t) == 2 * (65536ull * t.feature_channels + v4 * widths));
      CHECK(zero_container(t).payload_size() == container_payload_size(t));
    }
}

// Offset of the first table header in a serialized container.
static size_t first_table_header(const LutContainer& c, size_t total) {
  return total - c.payload_size() - 8 * 2 * c.topology.table_shapes().size();
}

TEST_CASE("container serialization") {
  const auto topo = builtin_topology("S", 8);
  const auto c = random_container(topo, 42);
  const auto bytes = serialize_container(c);

  SUBCASE("round trip and determinism") {
    CHECK(parse_container(bytes) == c);
    CHECK(serialize_container(parse_container(bytes)) == bytes);
    CHECK(serialize_container(random_container(topo, 42)) == bytes);
    CHECK(!(random_container(topo, 43) == c));
    TempDir dir;
    save_container(dir.path / "c.splut", c);
    CHECK(load_container(dir.path / "c.splut") == c);
  }
  SUBCASE("scale exponents survive") {
    auto d = c;
    d.table(Branch::lsb, 1, 0) = LutTable(LutKind::wc, 8, 4, -3);
    d.table(Branch::lsb, 1, 0).row(5)[1] = 99;
    CHECK(parse_container(serialize_container(d)) == d);
  }
  SUBCASE("bad magic") {
    auto b = bytes;
    b[0] ^= 0x20;
    try {
      parse_container(b);
      FAIL("accepted bad magic");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::bad_magic);
    }
  }
  SUBCASE("version mismatch") {
    auto b = bytes;
    b[4] = static_cast<uint8_t>(kContainerVersion + 1);
    try {
      parse_container(b);
      FAIL("accepted wrong version");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::version_mismatch);
    }
  }
  SUBCASE("truncation anywhere") {
    for (size_t cut : {size_t{0}, size_t{3}, size_t{10}, size_t{30}, bytes.size() / 2, bytes.size() - 1}) {
      std::vector<uint8_t> b(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
      try {
        parse_container(b);
        FAIL("accepted truncated stream of ", cut, " bytes");
      } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::truncated);
      }
    }
  }
  SUBCASE("trailing bytes") {
    auto b = bytes;
    b.push_back(0);
    CHECK_THROWS_AS(parse_container(b), ParseError);
  }
  SUBCASE("table shape disagreeing with the header") {
    auto b = bytes;
    const size_t h = first_table_header(c, b.size());
    REQUIRE(b[h] == 0);      // branch
    REQUIRE(b[h + 2] == 0);  // kind wh
    REQUIRE(b[h + 5] == 4);  // out_ch low byte
    b[h + 5] = 5;
    try {
      parse_container(b);
      FAIL("accepted inconsistent table shape");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::invalid);
    }
    b = bytes;
    b[h + 7] = 3;  // scale exponent out of range
    CHECK_THROWS_AS(parse_container(b), ParseError);
  }
  SUBCASE("mismatched in-memory container is refused on write") {
    auto d = c;
    d.tables[1].pop_back();
    CHECK_THROWS_AS(serialize_container(d), UsageError);
  }
}
