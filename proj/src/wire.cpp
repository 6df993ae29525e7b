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

#include "wire.hpp"

namespace splut::wire {

void write_magic(Writer& w, const char (&magic)[5], uint16_t version) {
  for (int k = 0; k < 4; ++k) w.u8(static_cast<uint8_t>(magic[k]));
  w.u16(version);
}

void read_magic(Reader& r, const char (&magic)[5], uint16_t version) {
  const std::string got = r.string(4);
  if (got != std::string(magic, 4)) throw ParseError(ParseErrorKind::bad_magic, "expected '" + std::string(magic) + "'");
  const uint16_t v = r.u16();
  if (v != version)
    throw ParseError(ParseErrorKind::version_mismatch,
                     "format version " + std::to_string(v) + ", supported " + std::to_string(version));
}

namespace {

enum : uint8_t { kSpatialTag = 0, kQueryTag = 1 };

}  // namespace

void write_topology(Writer& w, const ModelTopology& t) {
  w.u8(static_cast<uint8_t>(t.name.size()));
  w.bytes(std::span(reinterpret_cast<const uint8_t*>(t.name.data()), t.name.size()));
  w.u8(static_cast<uint8_t>(t.scale));
  w.u16(static_cast<uint16_t>(t.feature_channels));
  w.u16(static_cast<uint16_t>(t.query_bins));
  w.u8(static_cast<uint8_t>((t.skips.sc1 ? 1 : 0) | (t.skips.sc2 ? 2 : 0) | (t.skips.sc3 ? 4 : 0)));
  w.u8(static_cast<uint8_t>(t.blocks.size()));
  for (const auto& block : t.blocks) {
    if (const auto* sp = std::get_if<SpatialBlock>(&block)) {
      w.u8(kSpatialTag);
      w.u8(static_cast<uint8_t>(sp->out_ch));
      continue;
    }
    const auto& qb = std::get<QueryBlock>(block);
    w.u8(kQueryTag);
    w.u8(static_cast<uint8_t>(qb.aggregations.size()));
    for (const auto& a : qb.aggregations) {
      w.u8(static_cast<uint8_t>(a.direction));
      w.u8(static_cast<uint8_t>(a.group_a));
      w.u8(static_cast<uint8_t>(a.group_b));
    }
    w.u8(static_cast<uint8_t>(qb.luts.size()));
    for (const auto& l : qb.luts) {
      w.u8(static_cast<uint8_t>(l.kind));
      w.u8(static_cast<uint8_t>(l.source));
      w.u8(static_cast<uint8_t>(l.out_ch));
    }
  }
}

ModelTopology read_topology(Reader& r) {
  auto invalid = [](const std::string& what) { return ParseError(ParseErrorKind::invalid, what); };
  ModelTopology t;
  t.name = r.string(r.u8());
  t.scale = r.u8();
  t.feature_channels = r.u16();
  t.query_bins = r.u16();
  const uint8_t skips = r.u8();
  if (skips & ~7u) throw invalid("unknown skip flag bits");
  t.skips = {(skips & 1) != 0, (skips & 2) != 0, (skips & 4) != 0};
  const int block_count = r.u8();
  for (int b = 0; b < block_count; ++b) {
    const uint8_t tag = r.u8();
    if (tag == kSpatialTag) {
      t.blocks.push_back(SpatialBlock{r.u8()});
    } else if (tag == kQueryTag) {
      QueryBlock qb;
      const int aggs = r.u8();
      for (int k = 0; k < aggs; ++k) {
        const uint8_t dir = r.u8();
        if (dir > 1) throw invalid("unknown aggregation direction");
        const int ga = r.u8();
        const int gb = r.u8();
        qb.aggregations.push_back({static_cast<AggDirection>(dir), ga, gb});
      }
      const int luts = r.u8();
      for (int k = 0; k < luts; ++k) {
        const uint8_t kind = r.u8();
        if (kind > 2) throw invalid("unknown LUT kind");
        const int source = r.u8();
        const int out_ch = r.u8();
        qb.luts.push_back({static_cast<LutKind>(kind), source, out_ch});
      }
      t.blocks.push_back(std::move(qb));
    } else {
      throw invalid("unknown block tag " + std::to_string(tag));
    }
  }
  try {
    t.validate();
  } catch (const UsageError& e) {
    throw invalid(e.what());
  }
  return t;
}

}  // namespace splut::wire
