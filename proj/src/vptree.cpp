// src/vptree.cpp

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

#include "rctsne/vptree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace rctsne {

namespace {

// splitmix64; vantage choice only affects tree shape, never query results,
// but a fixed stream keeps the build identical across platforms.
std::uint64_t next_rand(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

VpTree::VpTree(const DataMatrix& data, std::vector<std::uint32_t> point_ids)
    : data_(data), items_(std::move(point_ids)) {
    if (items_.empty()) throw std::invalid_argument("vptree: empty point set");
    nodes_.reserve(items_.size());
    // Scratch: (distance to current vantage, point id). nth_element permutes
    // these pairs, and pair comparison is exactly the (distance, id) order
    // needed for platform-independent splits under ties.
    std::vector<std::pair<double, std::uint32_t>> scratch(items_.size());
    for (std::size_t i = 0; i < items_.size(); ++i) scratch[i] = {0.0, items_[i]};
    std::uint64_t rng_state = 0x5bd1e995u;
    root_ = build(scratch, 0, items_.size(), rng_state);
    for (std::size_t i = 0; i < items_.size(); ++i) items_[i] = scratch[i].second;
}

VpTree::VpTree(const DataMatrix& data)
    : VpTree(data, [&] {
          std::vector<std::uint32_t> all(data.n);
          std::iota(all.begin(), all.end(), 0u);
          return all;
      }()) {}

double VpTree::distance(std::uint32_t item, const double* query) const {
    const double* p = data_.row(items_[item]);
    double acc = 0.0;
    for (std::size_t j = 0; j < data_.d; ++j) {
        const double diff = p[j] - query[j];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

std::int32_t VpTree::build(std::vector<std::pair<double, std::uint32_t>>& scratch,
                           std::size_t lower, std::size_t upper, std::uint64_t& rng_state) {
    if (lower >= upper) return -1;
    const std::int32_t node_id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();

    const std::size_t gap = upper - lower;
    if (gap == 1) {
        nodes_[node_id].item = static_cast<std::uint32_t>(lower);
        return node_id;
    }

    const std::size_t pick = lower + static_cast<std::size_t>(next_rand(rng_state) % gap);
    std::swap(scratch[lower], scratch[pick]);
    const double* vantage = data_.row(scratch[lower].second);
    for (std::size_t i = lower + 1; i < upper; ++i) {
        const double* p = data_.row(scratch[i].second);
        double acc = 0.0;
        for (std::size_t j = 0; j < data_.d; ++j) {
            const double diff = p[j] - vantage[j];
            acc += diff * diff;
        }
        scratch[i].first = std::sqrt(acc);
    }

    const std::size_t median = lower + gap / 2;
    std::nth_element(scratch.begin() + static_cast<std::ptrdiff_t>(lower + 1),
                     scratch.begin() + static_cast<std::ptrdiff_t>(median),
                     scratch.begin() + static_cast<std::ptrdiff_t>(upper));

    nodes_[node_id].item = static_cast<std::uint32_t>(lower);
    nodes_[node_id].radius = scratch[median].first;
    const std::int32_t left = build(scratch, lower + 1, median + 1, rng_state);
    const std::int32_t right = build(scratch, median + 1, upper, rng_state);
    nodes_[node_id].left = left;
    nodes_[node_id].right = right;
    return node_id;
}

struct VpTree::SearchState {
    const double* query;
    std::size_t k;
    std::uint32_t exclude;
    // Max-heap on (distance, id); the worst kept neighbor sits at the front.
    std::vector<std::pair<double, std::uint32_t>> heap;
    double tau = std::numeric_limits<double>::max();
};

void VpTree::search_node(std::int32_t node_id, SearchState& st) const {
    if (node_id < 0) return;
    const Node& nd = nodes_[node_id];
    const std::uint32_t pid = items_[nd.item];
    const double d = distance(nd.item, st.query);

    if (pid != st.exclude) {
        const std::pair<double, std::uint32_t> cand{d, pid};
        if (st.heap.size() < st.k) {
            st.heap.push_back(cand);
            std::push_heap(st.heap.begin(), st.heap.end());
            if (st.heap.size() == st.k) st.tau = st.heap.front().first;
        } else if (cand < st.heap.front()) {
            std::pop_heap(st.heap.begin(), st.heap.end());
            st.heap.back() = cand;
            std::push_heap(st.heap.begin(), st.heap.end());
            st.tau = st.heap.front().first;
        }
    }

    if (nd.left < 0 && nd.right < 0) return;

    // Inclusive bounds: subtrees touching the radius shell are still visited
    // so equal-distance candidates with smaller ids are never pruned away.
    if (d < nd.radius) {
        if (d - st.tau <= nd.radius) search_node(nd.left, st);
        if (d + st.tau >= nd.radius) search_node(nd.right, st);
    } else {
        if (d + st.tau >= nd.radius) search_node(nd.right, st);
        if (d - st.tau <= nd.radius) search_node(nd.left, st);
    }
}

void VpTree::search(const double* query, std::size_t k, std::uint32_t exclude,
                    std::vector<Hit>& out) const {
    out.clear();
    if (k == 0) return;
    SearchState st;
    st.query = query;
    st.k = k;
    st.exclude = exclude;
    st.heap.reserve(k + 1);
    search_node(root_, st);
    std::sort(st.heap.begin(), st.heap.end());
    out.reserve(st.heap.size());
    for (const auto& [dist, id] : st.heap) out.push_back(Hit{dist * dist, id});
}

}  // namespace rctsne
