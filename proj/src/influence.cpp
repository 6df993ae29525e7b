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

#include <algorithm>
#include <array>

#include "splut/engine.hpp"
#include "splut/errors.hpp"

namespace splut {

void SrBox::include(int x, int y) {
  if (empty()) {
    *this = {x, y, x, y};
    return;
  }
  x0 = std::min(x0, x);
  y0 = std::min(y0, y);
  x1 = std::max(x1, x);
  y1 = std::max(y1, y);
}

SrBox influence_extent(const LutContainer& container, const Rgb8Image& base, int probe_x, int probe_y,
                       ExecConfig cfg) {
  if (probe_x < 0 || probe_y < 0 || probe_x >= base.width() || probe_y >= base.height())
    throw UsageError("influence_extent: probe outside the image");
  const Rgb8Image reference = super_resolve(base, container, cfg);
  SrBox box;
  for (int c = 0; c < 3; ++c) {
    const int p = base.at(probe_x, probe_y, c);
    const std::array<int, 8> values = {0, 255, p ^ 0x80, p ^ 0x08, p ^ 0xFF, p ^ 0x40, std::min(p + 1, 255),
                                       std::max(p - 1, 0)};
    for (int v : values) {
      if (v == p) continue;
      Rgb8Image perturbed = base;
      perturbed.at(probe_x, probe_y, c) = static_cast<uint8_t>(v);
      const Rgb8Image out = super_resolve(perturbed, container, cfg);
      for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x)
          for (int cc = 0; cc < 3; ++cc)
            if (out.at(x, y, cc) != reference.at(x, y, cc)) box.include(x, y);
    }
  }
  return box;
}

SrBox influence_extent(const LutContainer& container, ExecConfig cfg) {
  return influence_extent(container, random_image(32, 32, 0x5EED), 16, 16, cfg);
}

}  // namespace splut
