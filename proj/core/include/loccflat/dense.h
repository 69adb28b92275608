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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace loccflat {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using Vec2 = std::array<Complex, 2>;

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
   public:
    /// Zero matrix; both extents must be positive.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    /// Builds a matrix from nested rows. All rows must have equal length.
    static ComplexMatrix from_rows(const std::vector<std::vector<Complex>> &rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return entries_; }
    std::span<Complex> entries() { return entries_; }
    std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix adjoint(const ComplexMatrix &a);
ComplexMatrix transpose(const ComplexMatrix &a);
ComplexMatrix conjugate(const ComplexMatrix &a);
ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex s, const ComplexMatrix &a);

CVector matvec(const ComplexMatrix &a, std::span<const Complex> x);

Complex trace(const ComplexMatrix &a);
double frobenius_norm(const ComplexMatrix &a);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// ||U U* - I||_F.
double unitarity_residual(const ComplexMatrix &u);

/// Places `a` in the top-left corner of an n x n zero matrix.
ComplexMatrix embed_top_left(const ComplexMatrix &a, std::size_t n);

/// <x|y>, conjugate-linear in the first argument.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm2(std::span<const Complex> x);

/// (A (x) I_m) x evaluated as a dense product: one row of the Kronecker
/// matrix is materialized at a time, so the cost is (rows(A) m) x (cols(A) m)
/// multiply-adds with O(cols(A) m) scratch.
CVector kron_identity_apply(const ComplexMatrix &a, std::size_t identity_dim, std::span<const Complex> x);

/// Pure state with explicit local-dimension metadata. The global index of
/// |i>_A |j>_B is i * d_B + j (row-major over the factors). Construction does
/// not enforce unit norm since intermediate vectors may be unnormalized.
class StateVector {
   public:
    StateVector(std::vector<std::size_t> dims, CVector amplitudes);

    /// Computational basis vector with the given per-factor indices.
    static StateVector basis(std::vector<std::size_t> dims, const std::vector<std::size_t> &digits);

    const std::vector<std::size_t> &dims() const { return dims_; }
    std::size_t num_factors() const { return dims_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::size_t size() const { return amplitudes_.size(); }
    const Complex &operator[](std::size_t k) const { return amplitudes_[k]; }

    double norm() const { return norm2(amplitudes_); }
    bool is_normalized(double tol) const;

    bool operator==(const StateVector &other) const = default;

   private:
    std::vector<std::size_t> dims_;
    CVector amplitudes_;
};

/// vec^{-1}: bipartite [d_A, d_B] state to the d_B x d_A matrix M with
/// M(j, i) = amplitude(i * d_B + j).
ComplexMatrix unvec(const StateVector &s);
/// Inverse of unvec; `m` must be d_B x d_A.
StateVector vec(const ComplexMatrix &m, std::size_t dim_a, std::size_t dim_b);

/// Exchanges the two factors of a bipartite state: [d_A, d_B] -> [d_B, d_A].
StateVector swap_parties(const StateVector &s);
/// Views a multipartite state as bipartite: factor 0 against the product of the rest.
StateVector split_first_factor(const StateVector &s);
/// Zero-pads the first factor of a bipartite state to `new_dim_a` >= d_A.
StateVector pad_first_factor(const StateVector &s, std::size_t new_dim_a);

struct Eigen2x2 {
    /// Ascending modulus; ties by ascending real part, then imaginary part.
    std::array<Complex, 2> values;
    /// Unit right eigenvectors. Equal when the input is defective.
    std::array<Vec2, 2> vectors;
};

/// Closed-form eigendecomposition of a 2x2 matrix.
Eigen2x2 eig2x2(const ComplexMatrix &m);

std::size_t ceil_log2(std::size_t n);

}  // namespace loccflat
