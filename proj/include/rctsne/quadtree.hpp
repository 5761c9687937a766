// include/rctsne/quadtree.hpp

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
#include <span>
#include <vector>

namespace rctsne {

/// Barnes-Hut quadtree over 2-D coordinates. Cells whose side over distance
/// ratio is at most theta are treated as a single pseudo-point at their
/// center of mass; theta = 0 therefore descends to every leaf and is exact.
class QuadTree {
public:
    /// Tree over rows of coords (row-major n x 2) selected by subset; an
    /// empty subset means all n points.
    QuadTree(std::span<const double> coords, std::span<const std::uint32_t> subset);
    explicit QuadTree(std::span<const double> coords);

    /// Accumulates the t-kernel repulsion sums for query position y:
    /// force += sum over accepted cells of c * w^2 * (y - com), and returns
    /// sum of c * w, where w = 1 / (1 + |y - com|^2) and c is the cell's
    /// point count. The query point itself, when stored, contributes w = 1
    /// and zero force; callers subtract that term from the returned sum.
    double accumulate(const double* y, double theta, double force[2]) const;

    std::size_t size() const { return count_; }

private:
    struct Node {
        double center[2];     // cell center
        double half = 0.0;    // half side length
        double com[2];        // center of mass of contained points
        double point[2];      // leaf payload
        std::uint32_t count = 0;
        std::uint32_t mult = 0;           // leaf multiplicity (coincident points)
        std::int32_t child[4] = {-1, -1, -1, -1};
        bool leaf = true;
    };

    void insert(std::int32_t node_id, const double* p, int depth);
    std::int32_t make_child(std::int32_t parent, int quadrant);

    std::vector<Node> nodes_;
    std::size_t count_ = 0;
};

}  // namespace rctsne
