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

#include "splut/detail/serial_kernel.hpp"

namespace splut::detail {

template Grid<int32_t> spatial_block(const Grid<int32_t>&, const LutTable&);
template Grid<int32_t> aggregate(const Grid<int32_t>&, int, int, AggDirection, int);
template Grid<int32_t> query_block(const Grid<int32_t>&, const QueryBlock&, std::span<const LutTable>, int);
template Grid<int32_t> run_branch(const Grid<int32_t>&, const std::vector<std::vector<LutTable>>&, int,
                                  const ModelTopology&);
template Rgb8Image super_resolve<int32_t>(const Rgb8Image&, const LutContainer&);

}  // namespace splut::detail
