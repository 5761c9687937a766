// include/rctsne/neighbors.hpp

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
#include <vector>

#include "rctsne/core.hpp"

namespace rctsne {

/// One point's neighbor ids with squared distances, ascending by
/// (distance, id). Never contains the point itself.
struct NeighborList {
    std::vector<std::uint32_t> ids;
    std::vector<double> sq_dists;
    std::size_t size() const { return ids.size(); }
};

/// Per-point sparse neighbor structure. Unsplit mode fills only `primary`;
/// split mode keeps same-labeled neighbors in `primary` and differently
/// labeled ones in `diff`.
struct NeighborSets {
    bool split = false;
    std::vector<NeighborList> primary;
    std::vector<NeighborList> diff;

    std::size_t size() const { return primary.size(); }
    std::size_t row_size(std::size_t i) const {
        return primary[i].size() + (split ? diff[i].size() : 0);
    }
};

/// Exact k nearest neighbors of every point among all others.
NeighborSets neighbors_unsplit(const DataMatrix& data, std::size_t k, int threads = 1);

/// Exact nearest neighbors per label group: for each point, up to k_same
/// same-labeled and up to k_diff differently-labeled neighbors, searched in
/// one tree per class. A class too small to supply k_same neighbors yields a
/// shorter list, never an error.
NeighborSets neighbors_per_label(const DataMatrix& data, const LabelVector& labels,
                                 std::size_t k_same, std::size_t k_diff, int threads = 1);

}  // namespace rctsne
