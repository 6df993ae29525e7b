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

#include "splut/image.hpp"
#include "splut/weights.hpp"

namespace splut {

struct ReferenceOptions {
  // When false, module outputs skip the 8-bit entry grid and are only rounded
  // to sixteenths. Exists to show the oracle depends on entry quantization.
  bool quantize_entries = true;
};

// Scalar re-derivation of the retrieval dataflow that never builds tables:
// every lookup is answered by evaluating the mapping module on the queried
// pattern and quantizing the result as table construction would. It is
// bit-exact with super_resolve(image, build_container(w)).
Rgb8Image reference_pipeline(const Rgb8Image& image, const WeightSet& w, ReferenceOptions opts = {});

}  // namespace splut
