// include/rctsne/core.hpp

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

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rctsne {

/// Dense n x d matrix of input points, row-major.
struct DataMatrix {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> values;

    DataMatrix() = default;
    DataMatrix(std::size_t n_, std::size_t d_) : n(n_), d(d_), values(n_ * d_, 0.0) {}

    const double* row(std::size_t i) const { return values.data() + i * d; }
    double* row(std::size_t i) { return values.data() + i * d; }
    double at(std::size_t i, std::size_t j) const { return values[i * d + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * d + j]; }
};

/// Per-point discrete class labels in [0, num_classes), with class counts.
/// Class ids are dense: every id below num_classes occurs at least once.
struct LabelVector {
    std::vector<std::int32_t> ids;
    std::vector<std::string> class_names;    // one per class id
    std::vector<std::size_t> class_counts;   // one per class id

    std::size_t size() const { return ids.size(); }
    std::int32_t num_classes() const { return static_cast<std::int32_t>(class_counts.size()); }
    bool same_label(std::size_t i, std::size_t j) const { return ids[i] == ids[j]; }

    /// Build from raw ids; derives counts and default names. Throws if any
    /// class id in [0, max_id] is unused or an id is negative.
    static LabelVector from_ids(std::vector<std::int32_t> raw);
};

enum class AffinityState { ConditionalRows, SymmetricNormalized };

/// Row-compressed nonnegative similarity matrix. In ConditionalRows state each
/// row sums to 1; in SymmetricNormalized state the total sum is 1 and the
/// pattern is structurally symmetric. Never stores self pairs.
struct SparseAffinity {
    std::size_t n = 0;
    std::vector<std::size_t> row_offsets;    // size n + 1
    std::vector<std::uint32_t> column_ids;
    std::vector<double> values;
    AffinityState state = AffinityState::ConditionalRows;

    std::size_t row_begin(std::size_t i) const { return row_offsets[i]; }
    std::size_t row_end(std::size_t i) const { return row_offsets[i + 1]; }
    std::size_t nnz() const { return values.size(); }
    double total() const;
};

/// Low-dimensional coordinates plus the optimization trace that produced them.
struct Embedding {
    std::size_t n = 0;
    int dim = 2;
    std::vector<double> coords;                          // row-major n x dim
    std::vector<std::pair<int, double>> loss_trace;      // (iteration, KL)
    std::uint64_t seed = 0;

    const double* row(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(dim); }
    double* row(std::size_t i) { return coords.data() + i * static_cast<std::size_t>(dim); }
};

enum class Method { Tsne, Ctsne, Rctsne };
enum class VarianceMode { OnP, OnR };

const char* to_string(Method m);
const char* to_string(VarianceMode v);
Method method_from_string(const std::string& s);
VarianceMode variance_mode_from_string(const std::string& s);

/// All knobs of the embedding pipeline. beta is the ratio of the two
/// conditioning weights (same-label over different-label for the HD
/// reweighting; the LD conditioning uses the inverse assignment); alpha is
/// fixed to 1 internally, so beta = 1 means no conditioning at all.
struct EmbedConfig {
    Method method = Method::Tsne;
    double perplexity = 30.0;
    double beta = 1.0;                   // in (0, 1]
    double theta = 0.2;                  // Barnes-Hut opening angle, 0 = exact
    int epochs = 750;
    VarianceMode variance_mode = VarianceMode::OnP;
    double exaggeration = 12.0;
    int exaggeration_iters = 250;
    double learning_rate = 0.0;          // <= 0 selects max(n/12, 50)
    double momentum = 0.5;
    double final_momentum = 0.8;
    int momentum_switch_iter = 250;
    std::uint64_t seed = 42;
    int out_dim = 2;
    int threads = 1;                     // 0 = hardware concurrency
};

/// Neighbor budgets: 3u total for the unsplit search, 1.5u per label split.
std::size_t unsplit_neighbor_count(double perplexity);
std::size_t split_neighbor_count(double perplexity);

/// Effective thread count for a given config (resolves threads == 0).
int resolve_threads(int requested);

struct ValidatedInput {
    const DataMatrix* data = nullptr;
    const LabelVector* labels = nullptr;  // null for plain t-SNE
    EmbedConfig cfg;
    std::size_t k_unsplit = 0;
    std::size_t k_split = 0;
    double learning_rate = 0.0;           // resolved
};

/// Checks every type invariant and cross-field precondition; throws
/// std::invalid_argument with a specific message on the first violation.
ValidatedInput validate_inputs(const DataMatrix& data, const LabelVector* labels,
                               const EmbedConfig& cfg);

}  // namespace rctsne
