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

// Little-endian byte stream helpers shared by the container and weight formats.

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "splut/errors.hpp"
#include "splut/topology.hpp"

namespace splut::wire {

class Writer {
 public:
  void u8(uint8_t v) { out_.push_back(v); }
  void i8(int8_t v) { out_.push_back(static_cast<uint8_t>(v)); }
  void u16(uint16_t v) {
    out_.push_back(static_cast<uint8_t>(v & 0xFF));
    out_.push_back(static_cast<uint8_t>(v >> 8));
  }
  void u32(uint32_t v) {
    for (int k = 0; k < 4; ++k) out_.push_back(static_cast<uint8_t>(v >> (8 * k)));
  }
  void f32(float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    u32(bits);
  }
  void bytes(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void bytes(std::span<const int8_t> b) {
    const auto* p = reinterpret_cast<const uint8_t*>(b.data());
    out_.insert(out_.end(), p, p + b.size());
  }

  std::vector<uint8_t> take() { return std::move(out_); }

 private:
  std::vector<uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> in) : in_(in) {}

  uint8_t u8() { return need(1)[0]; }
  int8_t i8() { return static_cast<int8_t>(need(1)[0]); }
  uint16_t u16() {
    const auto* p = need(2);
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
  }
  uint32_t u32() {
    const auto* p = need(4);
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) | (static_cast<uint32_t>(p[2]) << 16) |
           (static_cast<uint32_t>(p[3]) << 24);
  }
  float f32() {
    const uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
  void bytes(std::span<uint8_t> dst) { std::memcpy(dst.data(), need(dst.size()), dst.size()); }
  void bytes(std::span<int8_t> dst) { std::memcpy(dst.data(), need(dst.size()), dst.size()); }
  std::string string(size_t n) {
    const auto* p = need(n);
    return std::string(reinterpret_cast<const char*>(p), n);
  }

  bool at_end() const { return pos_ == in_.size(); }
  size_t remaining() const { return in_.size() - pos_; }

 private:
  const uint8_t* need(size_t n) {
    if (in_.size() - pos_ < n)
      throw ParseError(ParseErrorKind::truncated,
                       "stream ends at byte " + std::to_string(in_.size()) + ", needed " + std::to_string(n) +
                           " more at offset " + std::to_string(pos_));
    const uint8_t* p = in_.data() + pos_;
    pos_ += n;
    return p;
  }

  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

void write_magic(Writer& w, const char (&magic)[5], uint16_t version);
// Throws bad_magic / version_mismatch.
void read_magic(Reader& r, const char (&magic)[5], uint16_t version);

void write_topology(Writer& w, const ModelTopology& t);
// Structural decode; throws ParseError(invalid) if the decoded topology fails validation.
ModelTopology read_topology(Reader& r);

}  // namespace splut::wire
