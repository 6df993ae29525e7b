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

#include "splut/container.hpp"

#include <fstream>
#include <iterator>

#include "splut/errors.hpp"
#include "splut/rng.hpp"
#include "wire.hpp"

namespace splut {

namespace {

constexpr char kMagic[5] = "SPLC";

LutContainer empty_like(const ModelTopology& topology) {
  topology.validate();
  LutContainer c;
  c.topology = topology;
  for (auto& branch : c.tables) {
    branch.resize(topology.stage_count());
    for (const auto& s : topology.table_shapes()) branch[s.stage].emplace_back(s.kind, s.bins, s.out_ch, s.scale_exp);
  }
  return c;
}

}  // namespace

void LutContainer::validate() const {
  topology.validate();
  const auto shapes = topology.table_shapes();
  for (int b = 0; b < 2; ++b) {
    const auto& branch = tables[b];
    if (static_cast<int>(branch.size()) != topology.stage_count())
      throw UsageError("container: branch stage count disagrees with topology");
    size_t total = 0;
    for (const auto& stage : branch) total += stage.size();
    if (total != shapes.size()) throw UsageError("container: table count disagrees with topology");
    for (const auto& s : shapes) {
      if (s.slot >= static_cast<int>(branch[s.stage].size()))
        throw UsageError("container: missing table at stage " + std::to_string(s.stage));
      const auto& t = branch[s.stage][s.slot];
      if (t.kind() != s.kind || t.bins() != s.bins || t.out_channels() != s.out_ch)
        throw UsageError("container: table shape at stage " + std::to_string(s.stage) + " slot " +
                         std::to_string(s.slot) + " disagrees with topology");
    }
  }
}

uint64_t LutContainer::payload_size() const {
  uint64_t n = 0;
  for (const auto& branch : tables)
    for (const auto& stage : branch)
      for (const auto& t : stage) n += t.entries().size();
  return n;
}

LutContainer zero_container(const ModelTopology& topology) { return empty_like(topology); }

LutContainer random_container(const ModelTopology& topology, uint64_t seed) {
  LutContainer c = empty_like(topology);
  SplitMix64 rng(seed);
  for (auto& branch : c.tables)
    for (auto& stage : branch)
      for (auto& t : stage)
        for (auto& e : t.entries()) e = static_cast<int8_t>(static_cast<int>(rng.next() & 0xFF) - 128);
  return c;
}

std::vector<uint8_t> serialize_container(const LutContainer& c) {
  c.validate();
  wire::Writer w;
  wire::write_magic(w, kMagic, kContainerVersion);
  wire::write_topology(w, c.topology);
  const auto shapes = c.topology.table_shapes();
  w.u16(static_cast<uint16_t>(2 * shapes.size()));
  for (int b = 0; b < 2; ++b)
    for (const auto& s : shapes) {
      const auto& t = c.tables[b][s.stage][s.slot];
      w.u8(static_cast<uint8_t>(b));
      w.u8(static_cast<uint8_t>(s.stage));
      w.u8(static_cast<uint8_t>(t.kind()));
      w.u16(static_cast<uint16_t>(t.bins()));
      w.u16(static_cast<uint16_t>(t.out_channels()));
      w.i8(static_cast<int8_t>(t.scale_exp()));
      w.bytes(t.entries());
    }
  return w.take();
}

LutContainer parse_container(std::span<const uint8_t> bytes) {
  auto invalid = [](const std::string& what) { return ParseError(ParseErrorKind::invalid, what); };
  wire::Reader r(bytes);
  wire::read_magic(r, kMagic, kContainerVersion);
  LutContainer c;
  c.topology = wire::read_topology(r);
  const auto shapes = c.topology.table_shapes();
  const int count = r.u16();
  if (count != static_cast<int>(2 * shapes.size()))
    throw invalid("table count " + std::to_string(count) + " disagrees with topology (" +
                  std::to_string(2 * shapes.size()) + ")");
  for (auto& branch : c.tables) branch.resize(c.topology.stage_count());
  for (int k = 0; k < count; ++k) {
    const auto& s = shapes[k % shapes.size()];
    const int expected_branch = k / static_cast<int>(shapes.size());
    const int branch = r.u8();
    const int stage = r.u8();
    const uint8_t kind = r.u8();
    const int bins = r.u16();
    const int out_ch = r.u16();
    const int scale_exp = r.i8();
    if (branch != expected_branch || stage != s.stage)
      throw invalid("table " + std::to_string(k) + " is out of canonical (branch, stage) order");
    if (kind != static_cast<uint8_t>(s.kind) || bins != s.bins || out_ch != s.out_ch)
      throw invalid("table " + std::to_string(k) + " shape disagrees with topology");
    if (scale_exp < kMinScaleExp || scale_exp > kMaxScaleExp)
      throw invalid("table " + std::to_string(k) + " scale_exp outside [-4, 0]");
    LutTable t(s.kind, bins, out_ch, scale_exp);
    r.bytes(t.entries());
    c.tables[branch][stage].push_back(std::move(t));
  }
  if (!r.at_end()) throw invalid(std::to_string(r.remaining()) + " trailing bytes");
  return c;
}

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

void save_container(const std::filesystem::path& path, const LutContainer& c) {
  write_file(path, serialize_container(c));
}

LutContainer load_container(const std::filesystem::path& path) { return parse_container(read_file(path)); }

}  // namespace splut
