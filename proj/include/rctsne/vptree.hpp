// include/rctsne/vptree.hpp

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

/// Vantage-point tree over a subset of DataMatrix rows, Euclidean metric.
/// Searches are exact; equal distances are broken by the smaller point id so
/// query results are identical on every platform. Construction is
/// single-threaded, queries are read-only and may run concurrently.
class VpTree {
public:
    struct Hit {
        double sq_dist;
        std::uint32_t id;
    };

    /// Tree over the given rows of data (global row indices). Throws on an
    /// empty subset.
    VpTree(const DataMatrix& data, std::vector<std::uint32_t> point_ids);

    /// Tree over all rows.
    explicit VpTree(const DataMatrix& data);

    /// The k nearest stored points to `query` (a d-dim row), ascending by
    /// (distance, id). A stored point with id == exclude is skipped, pass
    /// an out-of-range id to keep all. Returns min(k, available) hits.
    void search(const double* query, std::size_t k, std::uint32_t exclude,
                std::vector<Hit>& out) const;

    std::size_t size() const { return items_.size(); }

private:
    struct Node {
        double radius = 0.0;
        std::uint32_t item = 0;     // index into items_
        std::int32_t left = -1;
        std::int32_t right = -1;
    };

    struct SearchState;

    std::int32_t build(std::vector<std::pair<double, std::uint32_t>>& scratch,
                       std::size_t lower, std::size_t upper, std::uint64_t& rng_state);
    void search_node(std::int32_t node_id, SearchState& st) const;
    double distance(std::uint32_t item, const double* query) const;

    const DataMatrix& data_;
    std::vector<std::uint32_t> items_;   // global row ids, permuted during build
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

}  // namespace rctsne
