// src/quadtree.cpp

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

#include "rctsne/quadtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rctsne {

namespace {
// Points that still collide this deep differ by less than 2^-60 of the root
// cell; merging them as coincident keeps the tree finite.
constexpr int kMaxDepth = 60;
}  // namespace

QuadTree::QuadTree(std::span<const double> coords, std::span<const std::uint32_t> subset) {
    const std::size_t total = coords.size() / 2;
    count_ = subset.empty() ? total : subset.size();
    if (count_ == 0) return;

    double lo[2] = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    double hi[2] = {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    auto visit = [&](std::uint32_t id) {
        for (int d = 0; d < 2; ++d) {
            lo[d] = std::min(lo[d], coords[2 * id + d]);
            hi[d] = std::max(hi[d], coords[2 * id + d]);
        }
    };
    if (subset.empty()) {
        for (std::size_t i = 0; i < total; ++i) visit(static_cast<std::uint32_t>(i));
    } else {
        for (std::uint32_t id : subset) visit(id);
    }

    nodes_.reserve(2 * count_ + 16);
    nodes_.emplace_back();
    Node& root = nodes_.front();
    root.center[0] = 0.5 * (lo[0] + hi[0]);
    root.center[1] = 0.5 * (lo[1] + hi[1]);
    const double span = std::max(hi[0] - lo[0], hi[1] - lo[1]);
    root.half = 0.5 * span + 1e-5 * (span > 0.0 ? span : 1.0);
    root.com[0] = root.com[1] = 0.0;

    if (subset.empty()) {
        for (std::size_t i = 0; i < total; ++i) insert(0, &coords[2 * i], 0);
    } else {
        for (std::uint32_t id : subset) insert(0, &coords[2 * id], 0);
    }
}

QuadTree::QuadTree(std::span<const double> coords) : QuadTree(coords, {}) {}

std::int32_t QuadTree::make_child(std::int32_t parent, int quadrant) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    Node& parent_node = nodes_[parent];  // reference taken after the push_back
    Node& child = nodes_.back();
    const double q = parent_node.half * 0.5;
    child.half = q;
    child.center[0] = parent_node.center[0] + ((quadrant & 1) ? q : -q);
    child.center[1] = parent_node.center[1] + ((quadrant & 2) ? q : -q);
    child.com[0] = child.com[1] = 0.0;
    parent_node.child[quadrant] = id;
    return id;
}

void QuadTree::insert(std::int32_t node_id, const double* p, int depth) {
    {
        Node& nd = nodes_[node_id];
        nd.count += 1;
        const double f = 1.0 / static_cast<double>(nd.count);
        nd.com[0] += (p[0] - nd.com[0]) * f;
        nd.com[1] += (p[1] - nd.com[1]) * f;
    }

    while (true) {
        Node& nd = nodes_[node_id];
        if (!nd.leaf) {
            const int quadrant = (p[0] >= nd.center[0] ? 1 : 0) | (p[1] >= nd.center[1] ? 2 : 0);
            std::int32_t child = nd.child[quadrant];
            if (child < 0) child = make_child(node_id, quadrant);
            insert(child, p, depth + 1);
            return;
        }
        if (nd.mult == 0) {
            nd.point[0] = p[0];
            nd.point[1] = p[1];
            nd.mult = 1;
            return;
        }
        if ((nd.point[0] == p[0] && nd.point[1] == p[1]) || depth >= kMaxDepth) {
            nd.mult += 1;
            return;
        }
        // Split: push the stored point one level down, then retry the insert
        // against this (now internal) node.
        const double old_point[2] = {nd.point[0], nd.point[1]};
        const std::uint32_t old_mult = nd.mult;
        nd.mult = 0;
        nd.leaf = false;
        const int quadrant =
            (old_point[0] >= nd.center[0] ? 1 : 0) | (old_point[1] >= nd.center[1] ? 2 : 0);
        const std::int32_t child = make_child(node_id, quadrant);
        {
            Node& child_node = nodes_[child];
            child_node.count = old_mult;
            child_node.com[0] = old_point[0];
            child_node.com[1] = old_point[1];
            child_node.point[0] = old_point[0];
            child_node.point[1] = old_point[1];
            child_node.mult = old_mult;
        }
    }
}

double QuadTree::accumulate(const double* y, double theta, double force[2]) const {
    if (nodes_.empty() || nodes_.front().count == 0) return 0.0;

    double sum = 0.0;
    std::int32_t stack[4 * kMaxDepth + 8];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& nd = nodes_[stack[--top]];
        const double dx = y[0] - nd.com[0];
        const double dy = y[1] - nd.com[1];
        const double sq = dx * dx + dy * dy;
        const double side = 2.0 * nd.half;
        // A cell is opened iff side / distance > theta; leaves hold exact
        // points and are always accepted.
        if (nd.leaf || side * side <= theta * theta * sq) {
            const double w = 1.0 / (1.0 + sq);
            const double c = static_cast<double>(nd.count);
            sum += c * w;
            const double cw2 = c * w * w;
            force[0] += cw2 * dx;
            force[1] += cw2 * dy;
        } else {
            for (int q = 3; q >= 0; --q) {
                if (nd.child[q] >= 0) stack[top++] = nd.child[q];
            }
        }
    }
    return sum;
}

}  // namespace rctsne
