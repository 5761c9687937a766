// include/rctsne/datagen.hpp

// Copyright 2026  The rctsne authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "rctsne/core.hpp"

namespace rctsne {

/// The 1500 x 10 benchmark: two clusters in dims 0-3, three in dims 4-5,
/// pure noise in dims 6-9. labels14 marks the dim 0-3 cluster (600/900),
/// labels56 the dim 4-5 cluster (500 each).
struct SyntheticDataset {
    DataMatrix data;
    LabelVector labels14;
    LabelVector labels56;
};

inline constexpr std::size_t kSyntheticPoints = 1500;
inline constexpr std::size_t kSyntheticDims = 10;

/// Deterministic for a fixed seed; identical output on every platform.
SyntheticDataset generate_synthetic(std::uint64_t seed);

}  // namespace rctsne
