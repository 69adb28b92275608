// Copyright 2026 The loccflat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

#include "loccflat/dense.h"

namespace loccflat {

/// Unitary that equalizes the diagonal of a (zero-padded) square matrix M:
/// every diagonal entry of unitary * M_pad * unitary^* equals tr(M) / padded_dim.
struct FlatteningResult {
    ComplexMatrix unitary;
    std::size_t padded_dim;
    std::size_t original_dim;
    /// max_i |(U M_pad U^*)_ii - tr(M) / padded_dim|, read off the final iterate.
    double residual;
    std::size_t layers;
};

enum class FlattenPath {
    /// Materializes each layer unitary and applies it with full matrix products.
    kDense,
    /// Applies each layer as disjoint 2x2 rotations, O(d^2) per layer.
    kBlockSparse,
};

struct FlattenOptions {
    FlattenPath path = FlattenPath::kDense;
    /// Called after every layer with the layer index and the updated matrix.
    std::function<void(std::size_t layer, const ComplexMatrix &m)> on_layer;
};

/// Returns U = [u v] (columns) such that both diagonal entries of U^* m U equal tr(m)/2.
ComplexMatrix uflat2(const ComplexMatrix &m);

/// Layered flattening of a d x d matrix, d >= 2. The matrix is embedded into
/// 2^k x 2^k with k = ceil(log2 d) and exactly k layers of pairwise
/// flattenings are run; in layer p, index i is paired with i + 2^p.
FlatteningResult uflatgen(const ComplexMatrix &m, const FlattenOptions &options = {});

/// Recomputes the diagonal residual by direct conjugation U M_pad U^*.
double verify_flat(const ComplexMatrix &m, const FlatteningResult &r);

}  // namespace loccflat
