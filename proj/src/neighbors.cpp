// src/neighbors.cpp

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

#include "rctsne/neighbors.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "rctsne/parallel.hpp"
#include "rctsne/vptree.hpp"

namespace rctsne {

namespace {

NeighborList to_list(const std::vector<VpTree::Hit>& hits) {
    NeighborList out;
    out.ids.reserve(hits.size());
    out.sq_dists.reserve(hits.size());
    for (const auto& h : hits) {
        out.ids.push_back(h.id);
        out.sq_dists.push_back(h.sq_dist);
    }
    return out;
}

}  // namespace

NeighborSets neighbors_unsplit(const DataMatrix& data, std::size_t k, int threads) {
    if (k >= data.n)
        throw std::invalid_argument("neighbors: k must be below the point count");
    VpTree tree(data);
    NeighborSets out;
    out.split = false;
    out.primary.resize(data.n);
    parallel_for(data.n, threads, [&](std::size_t i) {
        std::vector<VpTree::Hit> hits;
        tree.search(data.row(i), k, static_cast<std::uint32_t>(i), hits);
        out.primary[i] = to_list(hits);
    });
    return out;
}

NeighborSets neighbors_per_label(const DataMatrix& data, const LabelVector& labels,
                                 std::size_t k_same, std::size_t k_diff, int threads) {
    if (labels.size() != data.n)
        throw std::invalid_argument("neighbors: label length does not match point count");
    const std::size_t num_classes = static_cast<std::size_t>(labels.num_classes());

    std::vector<std::vector<std::uint32_t>> members(num_classes);
    for (std::size_t i = 0; i < data.n; ++i)
        members[static_cast<std::size_t>(labels.ids[i])].push_back(static_cast<std::uint32_t>(i));

    // One tree per class; each diff query merges per-class results by
    // (distance, id).
    std::vector<std::unique_ptr<VpTree>> trees(num_classes);
    parallel_for(num_classes, threads, [&](std::size_t c) {
        trees[c] = std::make_unique<VpTree>(data, members[c]);
    });

    NeighborSets out;
    out.split = true;
    out.primary.resize(data.n);
    out.diff.resize(data.n);

    parallel_for(data.n, threads, [&](std::size_t i) {
        const std::size_t own = static_cast<std::size_t>(labels.ids[i]);
        std::vector<VpTree::Hit> hits;

        const std::size_t same_avail = labels.class_counts[own] - 1;
        const std::size_t want_same = std::min(k_same, same_avail);
        if (want_same > 0) {
            trees[own]->search(data.row(i), want_same, static_cast<std::uint32_t>(i), hits);
            out.primary[i] = to_list(hits);
        }

        const std::size_t diff_avail = data.n - labels.class_counts[own];
        const std::size_t want_diff = std::min(k_diff, diff_avail);
        if (want_diff > 0) {
            std::vector<VpTree::Hit> merged;
            merged.reserve(want_diff * (num_classes > 1 ? num_classes - 1 : 1));
            for (std::size_t c = 0; c < num_classes; ++c) {
                if (c == own) continue;
                const std::size_t want_c = std::min(want_diff, labels.class_counts[c]);
                trees[c]->search(data.row(i), want_c, static_cast<std::uint32_t>(data.n), hits);
                merged.insert(merged.end(), hits.begin(), hits.end());
            }
            std::sort(merged.begin(), merged.end(), [](const VpTree::Hit& a, const VpTree::Hit& b) {
                if (a.sq_dist != b.sq_dist) return a.sq_dist < b.sq_dist;
                return a.id < b.id;
            });
            merged.resize(std::min(want_diff, merged.size()));
            out.diff[i] = to_list(merged);
        }
    });
    return out;
}

}  // namespace rctsne
