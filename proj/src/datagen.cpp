// src/datagen.cpp

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

#include "rctsne/datagen.hpp"

#include <cmath>
#include <numeric>

#include "rctsne/rng.hpp"

namespace rctsne {

namespace {
constexpr std::size_t kColorClusters = 2;    // dims 0-3, sizes 600 / 900
constexpr std::size_t kShapeClusters = 3;    // dims 4-5, sizes 500 each
constexpr std::size_t kBluePoints = 600;
constexpr double kColorCenterSigma = 5.0;    // N(0, 25)
constexpr double kShapeCenterSigma = 1.0;    // N(0, 1)
constexpr double kWithinSigma = 0.1;         // N(0, 0.01)
constexpr double kNoiseSigma = 1.0;          // N(0, 1), dims 6-9
}  // namespace

// Draw order, fixed for reproducibility: (1) the two color-cluster centers,
// 4 dims each; (2) the three shape-cluster centers, 2 dims each; (3) the
// label-assignment shuffle; (4) per point, 6 within-cluster noise draws then
// 4 pure-noise draws.
SyntheticDataset generate_synthetic(std::uint64_t seed) {
    const std::size_t n = kSyntheticPoints;
    const std::size_t d = kSyntheticDims;
    Rng rng(seed);

    double color_centers[kColorClusters][4];
    for (auto& center : color_centers)
        for (double& c : center) c = kColorCenterSigma * rng.gaussian();

    double shape_centers[kShapeClusters][2];
    for (auto& center : shape_centers)
        for (double& c : center) c = kShapeCenterSigma * rng.gaussian();

    // Exact class counts by construction: the first 600 slots are blue and
    // slot index mod 3 picks the shape; shuffling the slots decorrelates the
    // two assignments while keeping the counts.
    std::vector<std::size_t> slots(n);
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    rng.shuffle(slots);

    std::vector<std::int32_t> labels14(n), labels56(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels14[i] = slots[i] < kBluePoints ? 0 : 1;
        labels56[i] = static_cast<std::int32_t>(slots[i] % kShapeClusters);
    }

    DataMatrix data(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = data.row(i);
        const double* cc = color_centers[labels14[i]];
        const double* sc = shape_centers[labels56[i]];
        for (std::size_t j = 0; j < 4; ++j) row[j] = cc[j] + kWithinSigma * rng.gaussian();
        for (std::size_t j = 0; j < 2; ++j) row[4 + j] = sc[j] + kWithinSigma * rng.gaussian();
        for (std::size_t j = 6; j < d; ++j) row[j] = kNoiseSigma * rng.gaussian();
    }

    SyntheticDataset out;
    out.data = std::move(data);
    out.labels14 = LabelVector::from_ids(std::move(labels14));
    out.labels56 = LabelVector::from_ids(std::move(labels56));
    return out;
}

}  // namespace rctsne
