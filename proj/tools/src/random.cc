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

#include "loccflat_tools/random.h"

#include <functional>
#include <numeric>

namespace loccflat::random {

namespace {

void orthogonalize_against(CVector &v, std::span<const Complex> u) {
    const Complex c = inner(u, v);
    for (std::size_t k = 0; k < v.size(); k++) {
        v[k] -= c * u[k];
    }
}

void normalize(CVector &v) {
    const double n = norm2(v);
    for (auto &z : v) {
        z /= n;
    }
}

}  // namespace

CVector gaussian_vector(Rng &rng, std::size_t n) {
    std::normal_distribution<double> normal;
    CVector v(n);
    for (auto &z : v) {
        double re = normal(rng);
        double im = normal(rng);
        z = {re, im};
    }
    return v;
}

ComplexMatrix gaussian_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols, gaussian_vector(rng, rows * cols));
}

ComplexMatrix trace_zero_matrix(Rng &rng, std::size_t d) {
    ComplexMatrix m = gaussian_matrix(rng, d, d);
    const Complex mean = trace(m) / static_cast<double>(d);
    for (std::size_t k = 0; k < d; k++) {
        m(k, k) -= mean;
    }
    return m;
}

ComplexMatrix trace_zero_hermitian(Rng &rng, std::size_t d) {
    ComplexMatrix g = gaussian_matrix(rng, d, d);
    ComplexMatrix h = 0.5 * (g + adjoint(g));
    const Complex mean = trace(h) / static_cast<double>(d);
    for (std::size_t k = 0; k < d; k++) {
        h(k, k) -= mean;
    }
    return h;
}

ComplexMatrix isometry(Rng &rng, std::size_t rows, std::size_t cols) {
    std::vector<CVector> columns;
    for (std::size_t c = 0; c < cols; c++) {
        CVector v = gaussian_vector(rng, rows);
        // Two passes of classical Gram-Schmidt keep the columns orthonormal to rounding.
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &u : columns) {
                orthogonalize_against(v, u);
            }
        }
        normalize(v);
        columns.push_back(std::move(v));
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; c++) {
        for (std::size_t r = 0; r < rows; r++) {
            m(r, c) = columns[c][r];
        }
    }
    return m;
}

ComplexMatrix unitary(Rng &rng, std::size_t d) { return isometry(rng, d, d); }

StateVector state(Rng &rng, std::vector<std::size_t> dims) {
    const std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    CVector v = gaussian_vector(rng, n);
    normalize(v);
    return StateVector(std::move(dims), std::move(v));
}

std::pair<StateVector, StateVector> orthogonal_pair(Rng &rng, std::vector<std::size_t> dims) {
    const std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    CVector a = gaussian_vector(rng, n);
    normalize(a);
    CVector b = gaussian_vector(rng, n);
    orthogonalize_against(b, a);
    orthogonalize_against(b, a);
    normalize(b);
    return {StateVector(dims, std::move(a)), StateVector(dims, std::move(b))};
}

KrausChannel channel(Rng &rng, std::size_t input_dim, std::size_t output_dim, std::size_t num_kraus) {
    const ComplexMatrix v = isometry(rng, output_dim * num_kraus, input_dim);
    KrausChannel ch{input_dim, output_dim, {}};
    for (std::size_t k = 0; k < num_kraus; k++) {
        ComplexMatrix kraus(output_dim, input_dim);
        for (std::size_t j = 0; j < output_dim; j++) {
            for (std::size_t a = 0; a < input_dim; a++) {
                kraus(j, a) = v(j * num_kraus + k, a);
            }
        }
        ch.kraus.push_back(std::move(kraus));
    }
    return ch;
}

}  // namespace loccflat::random
