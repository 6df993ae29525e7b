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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "splut/container.hpp"
#include "splut/mapping.hpp"
#include "splut/topology.hpp"

namespace splut {

inline constexpr uint16_t kWeightVersion = 1;

// Float mapping modules for both branches: modules[branch][stage][slot].
struct WeightSet {
  ModelTopology topology;
  std::array<std::vector<std::vector<MappingModule>>, 2> modules;

  const MappingModule& module(Branch b, int stage, int slot) const {
    return modules[static_cast<int>(b)].at(stage).at(slot);
  }
  MappingModule& module(Branch b, int stage, int slot) { return modules[static_cast<int>(b)].at(stage).at(slot); }
  size_t module_count() const;

  void validate() const;

  friend bool operator==(const WeightSet&, const WeightSet&) = default;
};

WeightSet zero_weights(const ModelTopology& topology);

// Deterministic per (topology, seed); SplitMix64 stream drawn module by
// module in canonical order, each layer weights (row-major) then bias.
WeightSet random_weights(const ModelTopology& topology, uint64_t seed);

std::vector<uint8_t> serialize_weights(const WeightSet& w);
WeightSet parse_weights(std::span<const uint8_t> bytes);
void save_weights(const std::filesystem::path& path, const WeightSet& w);
WeightSet load_weights(const std::filesystem::path& path);

// Transfers every module to its table (spatial and intermediate tables at
// scale 2^-4, final tables at 2^-1).
LutContainer build_container(const WeightSet& w, int threads = 1);

}  // namespace splut
