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

#include "loccflat/flatten.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "loccflat/errors.h"
#include "loccflat/tolerances.h"

namespace loccflat {

namespace {

Vec2 normalized(Vec2 v) {
    double n = std::hypot(std::abs(v[0]), std::abs(v[1]));
    return {v[0] / n, v[1] / n};
}

Complex inner2(const Vec2 &x, const Vec2 &y) { return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]; }

// Unit vector orthogonal to the unit vector u.
Vec2 orthogonal_complement(const Vec2 &u) { return {-std::conj(u[1]), std::conj(u[0])}; }

struct Rotation {
    std::size_t i;
    std::size_t j;
    ComplexMatrix w;
};

// m <- W^* m W restricted to the (i, j) plane, and u_tot <- W^* u_tot.
void apply_rotation(ComplexMatrix &m, ComplexMatrix &u_tot, const Rotation &r) {
    const std::size_t n = m.rows();
    const Complex w00 = r.w(0, 0), w01 = r.w(0, 1), w10 = r.w(1, 0), w11 = r.w(1, 1);
    for (std::size_t row = 0; row < n; row++) {
        Complex mi = m(row, r.i);
        Complex mj = m(row, r.j);
        m(row, r.i) = mi * w00 + mj * w10;
        m(row, r.j) = mi * w01 + mj * w11;
    }
    auto left = [&](ComplexMatrix &a) {
        for (std::size_t col = 0; col < a.cols(); col++) {
            Complex ai = a(r.i, col);
            Complex aj = a(r.j, col);
            a(r.i, col) = std::conj(w00) * ai + std::conj(w10) * aj;
            a(r.j, col) = std::conj(w01) * ai + std::conj(w11) * aj;
        }
    };
    left(m);
    left(u_tot);
}

double diagonal_residual(const ComplexMatrix &m, Complex target) {
    double worst = 0;
    for (std::size_t k = 0; k < m.rows(); k++) {
        worst = std::max(worst, std::abs(m(k, k) - target));
    }
    return worst;
}

}  // namespace

ComplexMatrix uflat2(const ComplexMatrix &m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw DimensionError("uflat2: matrix is not 2x2");
    }
    const Complex half_trace = 0.5 * trace(m);
    ComplexMatrix shifted = m;
    shifted(0, 0) -= half_trace;
    shifted(1, 1) -= half_trace;

    const Eigen2x2 eig = eig2x2(shifted);
    const Vec2 &w0 = eig.vectors[0];
    const Vec2 &w1 = eig.vectors[1];

    Vec2 u;
    Vec2 v;
    if (std::abs(eig.values[0]) <= kZeroTol * frobenius_norm(shifted)) {
        u = w0;
        v = orthogonal_complement(w0);
    } else {
        // arg(0) = 0, so the branch is total even for orthogonal eigenvectors.
        const Complex overlap = inner2(w1, w0);
        const Complex phase = std::polar(1.0, -std::arg(overlap));
        u = normalized({phase * w0[0] + w1[0], phase * w0[1] + w1[1]});
        v = normalized({phase * w0[0] - w1[0], phase * w0[1] - w1[1]});
        // <u|v> vanishes analytically; one Gram-Schmidt pass removes the
        // rounding left over when w0 and w1 are nearly parallel.
        const Complex leak = inner2(u, v);
        Vec2 fixed{v[0] - leak * u[0], v[1] - leak * u[1]};
        double fixed_norm = std::hypot(std::abs(fixed[0]), std::abs(fixed[1]));
        v = fixed_norm > 0.5 ? Vec2{fixed[0] / fixed_norm, fixed[1] / fixed_norm} : orthogonal_complement(u);
    }
    return ComplexMatrix(2, 2, {u[0], v[0], u[1], v[1]});
}

FlatteningResult uflatgen(const ComplexMatrix &m, const FlattenOptions &options) {
    if (!m.is_square()) {
        throw DimensionError("uflatgen: matrix is not square");
    }
    const std::size_t d = m.rows();
    if (d < 2) {
        throw DimensionError("uflatgen: dimension must be at least 2, got " + std::to_string(d));
    }
    const std::size_t k = ceil_log2(d);
    const std::size_t n = std::size_t{1} << k;

    ComplexMatrix work = embed_top_left(m, n);
    ComplexMatrix u_tot = ComplexMatrix::identity(n);
    std::vector<Rotation> layer;
    layer.reserve(n / 2);

    for (std::size_t p = 0; p < k; p++) {
        const std::size_t stride = std::size_t{1} << p;
        layer.clear();
        for (std::size_t i1 = 0; i1 < (n >> (p + 1)); i1++) {
            for (std::size_t i2 = 0; i2 < stride; i2++) {
                const std::size_t i = i1 * (stride << 1) + i2;
                const std::size_t j = i + stride;
                ComplexMatrix block(2, 2, {work(i, i), work(i, j), work(j, i), work(j, j)});
                layer.push_back({i, j, uflat2(block)});
            }
        }
        if (options.path == FlattenPath::kDense) {
            ComplexMatrix layer_unitary = ComplexMatrix::identity(n);
            for (const auto &r : layer) {
                layer_unitary(r.i, r.i) = r.w(0, 0);
                layer_unitary(r.i, r.j) = r.w(0, 1);
                layer_unitary(r.j, r.i) = r.w(1, 0);
                layer_unitary(r.j, r.j) = r.w(1, 1);
            }
            const ComplexMatrix layer_adjoint = adjoint(layer_unitary);
            work = matmul(matmul(layer_adjoint, work), layer_unitary);
            u_tot = matmul(layer_adjoint, u_tot);
        } else {
            for (const auto &r : layer) {
                apply_rotation(work, u_tot, r);
            }
        }
        if (options.on_layer) {
            options.on_layer(p, work);
        }
    }

    const Complex target = trace(m) / static_cast<double>(n);
    return FlatteningResult{std::move(u_tot), n, d, diagonal_residual(work, target), k};
}

double verify_flat(const ComplexMatrix &m, const FlatteningResult &r) {
    if (!m.is_square() || r.unitary.rows() != r.padded_dim || !r.unitary.is_square() || m.rows() > r.padded_dim) {
        throw DimensionError("verify_flat: matrix and flattening result have inconsistent shapes");
    }
    const ComplexMatrix padded = embed_top_left(m, r.padded_dim);
    const ComplexMatrix conjugated = matmul(matmul(r.unitary, padded), adjoint(r.unitary));
    return diagonal_residual(conjugated, trace(m) / static_cast<double>(r.padded_dim));
}

}  // namespace loccflat
