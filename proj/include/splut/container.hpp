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

#include "splut/lut.hpp"
#include "splut/topology.hpp"

namespace splut {

enum class Branch : uint8_t { msb = 0, lsb = 1 };

inline constexpr uint16_t kContainerVersion = 1;

// Both branches' tables for one topology. tables[branch][stage][slot].
struct LutContainer {
  ModelTopology topology;
  std::array<std::vector<std::vector<LutTable>>, 2> tables;

  const LutTable& table(Branch b, int stage, int slot) const {
    return tables[static_cast<int>(b)].at(stage).at(slot);
  }
  LutTable& table(Branch b, int stage, int slot) { return tables[static_cast<int>(b)].at(stage).at(slot); }
  const std::vector<std::vector<LutTable>>& branch(Branch b) const { return tables[static_cast<int>(b)]; }

  // Throws UsageError if table shapes disagree with the topology.
  void validate() const;
  uint64_t payload_size() const;

  friend bool operator==(const LutContainer&, const LutContainer&) = default;
};

// All-zero tables with the default scale exponents.
LutContainer zero_container(const ModelTopology& topology);
// Entries uniform over [-128, 127].
LutContainer random_container(const ModelTopology& topology, uint64_t seed);

std::vector<uint8_t> serialize_container(const LutContainer& c);
LutContainer parse_container(std::span<const uint8_t> bytes);

void save_container(const std::filesystem::path& path, const LutContainer& c);
LutContainer load_container(const std::filesystem::path& path);

std::vector<uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const uint8_t> bytes);

}  // namespace splut
