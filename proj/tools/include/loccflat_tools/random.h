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

#include <cstdint>
#include <random>
#include <utility>

#include "loccflat/dense.h"
#include "loccflat/env_code.h"

namespace loccflat::random {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
CVector gaussian_vector(Rng &rng, std::size_t n);
ComplexMatrix gaussian_matrix(Rng &rng, std::size_t rows, std::size_t cols);

/// Gaussian matrix with its trace removed from the diagonal.
ComplexMatrix trace_zero_matrix(Rng &rng, std::size_t d);
ComplexMatrix trace_zero_hermitian(Rng &rng, std::size_t d);

/// Matrix with orthonormal columns (rows >= cols) from Gram-Schmidt on a
/// Gaussian matrix; with rows == cols this is a random unitary.
ComplexMatrix isometry(Rng &rng, std::size_t rows, std::size_t cols);
ComplexMatrix unitary(Rng &rng, std::size_t d);

StateVector state(Rng &rng, std::vector<std::size_t> dims);
/// Two orthonormal states with the given local dimensions.
std::pair<StateVector, StateVector> orthogonal_pair(Rng &rng, std::vector<std::size_t> dims);

/// Channel whose Kraus operators are the blocks of a random isometry.
KrausChannel channel(Rng &rng, std::size_t input_dim, std::size_t output_dim, std::size_t num_kraus);

}  // namespace loccflat::random
