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

#include "splut/weights.hpp"

#include <cmath>
#include <string>

#include "splut/errors.hpp"
#include "splut/rng.hpp"
#include "wire.hpp"

namespace splut {

namespace {

constexpr char kMagic[5] = "SPWT";

constexpr double kHiddenGain = 4.0;
constexpr double kOutputGain = 3.0;
constexpr double kFinalOutputGain = 20.0;

}  // namespace

size_t WeightSet::module_count() const {
  size_t n = 0;
  for (const auto& branch : modules)
    for (const auto& stage : branch) n += stage.size();
  return n;
}

void WeightSet::validate() const {
  topology.validate();
  const auto shapes = topology.table_shapes();
  for (const auto& branch : modules) {
    if (static_cast<int>(branch.size()) != topology.stage_count())
      throw UsageError("weights: branch stage count disagrees with topology");
    size_t total = 0;
    for (const auto& stage : branch) total += stage.size();
    if (total != shapes.size()) throw UsageError("weights: module count disagrees with topology");
    for (const auto& s : shapes) {
      if (s.slot >= static_cast<int>(branch[s.stage].size())) throw UsageError("weights: missing module");
      const auto& m = branch[s.stage][s.slot];
      m.validate();
      if (module_kind(m) != s.kind || m.out_ch != s.out_ch)
        throw UsageError("weights: module at stage " + std::to_string(s.stage) + " slot " + std::to_string(s.slot) +
                         " disagrees with topology");
    }
  }
}

WeightSet zero_weights(const ModelTopology& topology) {
  topology.validate();
  WeightSet w;
  w.topology = topology;
  for (auto& branch : w.modules) {
    branch.resize(topology.stage_count());
    for (const auto& s : topology.table_shapes()) branch[s.stage].push_back(MappingModule::zeros(s.kind, s.out_ch));
  }
  return w;
}

WeightSet random_weights(const ModelTopology& topology, uint64_t seed) {
  WeightSet w = zero_weights(topology);
  SplitMix64 rng(seed);
  auto uniform = [&rng](double scale) { return static_cast<float>((rng.next_double() - 0.5) * scale); };
  for (auto& branch : w.modules)
    for (int stage = 0; stage < static_cast<int>(branch.size()); ++stage)
      for (auto& m : branch[stage])
        for (size_t i = 0; i < m.layers.size(); ++i) {
          auto& l = m.layers[i];
          const bool output = i + 1 == m.layers.size();
          // Gains keep activations O(1) through the stack and spread the
          // outputs over many table steps (final tables have a coarser grid).
          double gain = kHiddenGain;
          if (output) gain = topology.is_final_stage(stage) ? kFinalOutputGain : kOutputGain;
          const double scale = gain / std::sqrt(static_cast<double>(l.cols));
          for (auto& v : l.weights) v = uniform(scale);
          for (auto& v : l.bias) v = uniform(output ? 0.0 : 1.0);
        }
  return w;
}

std::vector<uint8_t> serialize_weights(const WeightSet& w) {
  w.validate();
  wire::Writer out;
  wire::write_magic(out, kMagic, kWeightVersion);
  wire::write_topology(out, w.topology);
  out.u16(static_cast<uint16_t>(w.module_count()));
  const auto shapes = w.topology.table_shapes();
  for (int b = 0; b < 2; ++b)
    for (const auto& s : shapes) {
      const auto& m = w.modules[b][s.stage][s.slot];
      out.u8(static_cast<uint8_t>(b));
      out.u8(static_cast<uint8_t>(s.stage));
      out.u8(static_cast<uint8_t>(s.slot));
      out.u8(static_cast<uint8_t>(m.kh));
      out.u8(static_cast<uint8_t>(m.kw));
      out.u16(static_cast<uint16_t>(m.in_ch));
      out.u16(static_cast<uint16_t>(m.out_ch));
      for (const auto& l : m.layers) {
        out.u16(static_cast<uint16_t>(l.rows));
        out.u16(static_cast<uint16_t>(l.cols));
        for (float v : l.weights) out.f32(v);
        for (float v : l.bias) out.f32(v);
      }
    }
  return out.take();
}

WeightSet parse_weights(std::span<const uint8_t> bytes) {
  auto invalid = [](const std::string& what) { return ParseError(ParseErrorKind::invalid, what); };
  wire::Reader r(bytes);
  wire::read_magic(r, kMagic, kWeightVersion);
  WeightSet w;
  w.topology = wire::read_topology(r);
  const auto shapes = w.topology.table_shapes();
  const int count = r.u16();
  if (count != static_cast<int>(2 * shapes.size()))
    throw invalid("module count " + std::to_string(count) + " disagrees with topology (" +
                  std::to_string(2 * shapes.size()) + ")");
  for (auto& branch : w.modules) branch.resize(w.topology.stage_count());
  for (int k = 0; k < count; ++k) {
    const auto& s = shapes[k % shapes.size()];
    const int branch = r.u8();
    const int stage = r.u8();
    const int slot = r.u8();
    if (branch != k / static_cast<int>(shapes.size()) || stage != s.stage || slot != s.slot)
      throw invalid("module " + std::to_string(k) + " is out of canonical (branch, stage, slot) order");
    MappingModule m;
    m.kh = r.u8();
    m.kw = r.u8();
    m.in_ch = r.u16();
    m.out_ch = r.u16();
    int expect_cols = m.kh * m.kw * m.in_ch;
    for (size_t li = 0; li < m.layers.size(); ++li) {
      auto& l = m.layers[li];
      l.rows = r.u16();
      l.cols = r.u16();
      // Check the chain before trusting the sizes to read the payload.
      if (l.cols != expect_cols || (li + 1 == m.layers.size() && l.rows != m.out_ch) || l.rows < 1)
        throw invalid("module " + std::to_string(k) + " layer " + std::to_string(li) + " is " +
                      std::to_string(l.rows) + "x" + std::to_string(l.cols) + ", header implies " +
                      std::to_string(expect_cols) + " inputs");
      expect_cols = l.rows;
      const size_t n = static_cast<size_t>(l.rows) * l.cols;
      if (n * 4 > r.remaining()) throw ParseError(ParseErrorKind::truncated, "layer weights exceed the stream");
      l.weights.resize(n);
      for (auto& v : l.weights) v = r.f32();
      l.bias.resize(l.rows);
      for (auto& v : l.bias) v = r.f32();
    }
    try {
      m.validate();
      if (module_kind(m) != s.kind || m.out_ch != s.out_ch) throw UsageError("module shape disagrees with topology");
    } catch (const UsageError& e) {
      throw invalid("module " + std::to_string(k) + ": " + e.what());
    }
    w.modules[branch][stage].push_back(std::move(m));
  }
  if (!r.at_end()) throw invalid(std::to_string(r.remaining()) + " trailing bytes");
  return w;
}

void save_weights(const std::filesystem::path& path, const WeightSet& w) { write_file(path, serialize_weights(w)); }

WeightSet load_weights(const std::filesystem::path& path) { return parse_weights(read_file(path)); }

LutContainer build_container(const WeightSet& w, int threads) {
  w.validate();
  LutContainer c;
  c.topology = w.topology;
  for (int b = 0; b < 2; ++b) {
    c.tables[b].resize(w.topology.stage_count());
    for (const auto& s : w.topology.table_shapes())
      c.tables[b][s.stage].push_back(transfer_to_lut(w.modules[b][s.stage][s.slot], s.bins, s.scale_exp, threads));
  }
  return c;
}

}  // namespace splut
