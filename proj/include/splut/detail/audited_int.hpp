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

// Counting integer for the arithmetic audit of the serial kernel. Every
// operation on data values is tallied by category; a multiplication or
// division anywhere on the data path shows up as a non-zero count.

#include <cstdint>

namespace splut::detail {

struct OpCounts {
  uint64_t adds = 0;
  uint64_t shifts = 0;
  uint64_t compares = 0;
  uint64_t lookups = 0;
  uint64_t multiplies = 0;
  uint64_t divisions = 0;
};

inline OpCounts& audit_counts() {
  thread_local OpCounts counts;
  return counts;
}

struct AuditedInt {
  int32_t v = 0;

  AuditedInt() = default;
  AuditedInt(int32_t value) : v(value) {}  // NOLINT(google-explicit-constructor)

  friend AuditedInt operator+(AuditedInt a, AuditedInt b) { return ++audit_counts().adds, a.v + b.v; }
  friend AuditedInt operator-(AuditedInt a, AuditedInt b) { return ++audit_counts().adds, a.v - b.v; }
  friend AuditedInt operator-(AuditedInt a) { return ++audit_counts().adds, -a.v; }
  friend AuditedInt operator<<(AuditedInt a, int k) { return ++audit_counts().shifts, a.v << k; }
  friend AuditedInt operator>>(AuditedInt a, int k) { return ++audit_counts().shifts, a.v >> k; }
  friend AuditedInt operator*(AuditedInt a, AuditedInt b) { return ++audit_counts().multiplies, a.v * b.v; }
  friend AuditedInt operator/(AuditedInt a, AuditedInt b) { return ++audit_counts().divisions, a.v / b.v; }
  friend AuditedInt operator%(AuditedInt a, AuditedInt b) { return ++audit_counts().divisions, a.v % b.v; }
  friend bool operator<(AuditedInt a, AuditedInt b) { return ++audit_counts().compares, a.v < b.v; }
  friend bool operator>(AuditedInt a, AuditedInt b) { return ++audit_counts().compares, a.v > b.v; }
  friend bool operator==(AuditedInt a, AuditedInt b) { return ++audit_counts().compares, a.v == b.v; }

  AuditedInt& operator+=(AuditedInt b) { return *this = *this + b; }
};

inline int32_t to_int(int32_t v) { return v; }
inline int32_t to_int(AuditedInt v) { return v.v; }

template <class T>
inline int32_t load(const T* base, int32_t offset) {
  return base[offset];
}
template <class T>
inline AuditedInt load(const T* base, AuditedInt offset) {
  ++audit_counts().lookups;
  return base[offset.v];
}

}  // namespace splut::detail
