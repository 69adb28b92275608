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

#include "loccflat/dense.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "loccflat/errors.h"
#include "loccflat/tolerances.h"

namespace loccflat {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(std::span<const Complex> xs, const char *what) {
    for (const auto &z : xs) {
        if (!is_finite(z)) {
            throw DomainError(std::string(what) + ": non-finite entry");
        }
    }
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

// Error-free transformations for a compensated dot product (Ogita, Rump, Oishi).
struct TwoTerm {
    double hi;
    double lo;
};

TwoTerm two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

TwoTerm two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

template <std::size_t N>
double dot2(const std::array<double, N> &x, const std::array<double, N> &y) {
    auto [p, s] = two_prod(x[0], y[0]);
    for (std::size_t k = 1; k < N; k++) {
        auto [h, r] = two_prod(x[k], y[k]);
        auto [q, e] = two_sum(p, h);
        p = q;
        s += e + r;
    }
    return p + s;
}

// x1 * y1 + x2 * y2 with compensated accumulation of the real products.
Complex sum_of_products(Complex x1, Complex y1, Complex x2, Complex y2) {
    double re = dot2<4>({x1.real(), -x1.imag(), x2.real(), -x2.imag()}, {y1.real(), y1.imag(), y2.real(), y2.imag()});
    double im = dot2<4>({x1.real(), x1.imag(), x2.real(), x2.imag()}, {y1.imag(), y1.real(), y2.imag(), y2.real()});
    return {re, im};
}

// Keys closer than this (relative to the larger modulus) count as ties, so
// the order of +-mu does not hinge on the last rounding bit.
constexpr double kTieTol = 1e-12;

bool eigenvalue_less(Complex a, Complex b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    const double tie = kTieTol * std::max(ma, mb);
    if (std::abs(ma - mb) > tie) {
        return ma < mb;
    }
    if (std::abs(a.real() - b.real()) > tie) {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

// Unit vector with its largest-modulus component (first on ties) real positive.
Vec2 canonical_unit(Vec2 v) {
    double n = std::hypot(std::abs(v[0]), std::abs(v[1]));
    std::size_t k = std::abs(v[1]) > std::abs(v[0]) ? 1 : 0;
    Complex phase = std::abs(v[k]) > 0 ? std::conj(v[k]) / std::abs(v[k]) : Complex{1, 0};
    return {v[0] * phase / n, v[1] * phase / n};
}

Vec2 eigenvector_for(const ComplexMatrix &m, Complex lambda, double scale) {
    Vec2 r0{m(0, 0) - lambda, m(0, 1)};
    Vec2 r1{m(1, 0), m(1, 1) - lambda};
    double n0 = std::hypot(std::abs(r0[0]), std::abs(r0[1]));
    double n1 = std::hypot(std::abs(r1[0]), std::abs(r1[1]));
    const Vec2 &r = n1 > n0 ? r1 : r0;
    if (std::max(n0, n1) <= kZeroTol * scale) {
        return {Complex{1, 0}, Complex{0, 0}};
    }
    return canonical_unit({r[1], -r[0]});
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("ComplexMatrix: extents must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("ComplexMatrix: extents must be positive");
    }
    if (entries_.size() != rows * cols) {
        throw DimensionError("ComplexMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(entries_.size()));
    }
    require_finite(entries_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>> &rows) {
    if (rows.empty()) {
        throw DimensionError("ComplexMatrix::from_rows: no rows");
    }
    std::vector<Complex> entries;
    entries.reserve(rows.size() * rows[0].size());
    for (const auto &r : rows) {
        if (r.size() != rows[0].size()) {
            throw DimensionError("ComplexMatrix::from_rows: ragged rows");
        }
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return ComplexMatrix(rows.size(), rows[0].size(), std::move(entries));
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                             std::to_string(b.rows()) + " differ");
    }
    const std::size_t n = a.rows();
    const std::size_t inner_dim = a.cols();
    const std::size_t m = b.cols();
    ComplexMatrix c(n, m);
    // Interleaved (re, im) doubles. Tiles of b (kTileK x kTileJ) stay cache
    // resident while every row of a sweeps over them in i-k-j order.
    constexpr std::size_t kTileK = 64;
    constexpr std::size_t kTileJ = 128;
    auto *cd = reinterpret_cast<double *>(c.entries().data());
    const auto *ad = reinterpret_cast<const double *>(a.entries().data());
    const auto *bd = reinterpret_cast<const double *>(b.entries().data());
    for (std::size_t j0 = 0; j0 < m; j0 += kTileJ) {
        const std::size_t j1 = std::min(m, j0 + kTileJ);
        for (std::size_t k0 = 0; k0 < inner_dim; k0 += kTileK) {
            const std::size_t k1 = std::min(inner_dim, k0 + kTileK);
            for (std::size_t i = 0; i < n; i++) {
                double *crow = cd + 2 * i * m;
                for (std::size_t k = k0; k < k1; k++) {
                    const double ar = ad[2 * (i * inner_dim + k)];
                    const double ai = ad[2 * (i * inner_dim + k) + 1];
                    if (ar == 0.0 && ai == 0.0) {
                        continue;
                    }
                    const double *brow = bd + 2 * k * m;
                    for (std::size_t j = j0; j < j1; j++) {
                        const double br = brow[2 * j];
                        const double bi = brow[2 * j + 1];
                        crow[2 * j] += ar * br - ai * bi;
                        crow[2 * j + 1] += ar * bi + ai * br;
                    }
                }
            }
        }
    }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            r(j, i) = std::conj(a(i, j));
        }
    }
    return r;
}

ComplexMatrix transpose(const ComplexMatrix &a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            r(j, i) = a(i, j);
        }
    }
    return r;
}

ComplexMatrix conjugate(const ComplexMatrix &a) {
    ComplexMatrix r = a;
    for (auto &z : r.entries()) {
        z = std::conj(z);
    }
    return r;
}

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "operator+");
    ComplexMatrix r = a;
    auto rb = b.entries();
    auto re = r.entries();
    for (std::size_t k = 0; k < re.size(); k++) {
        re[k] += rb[k];
    }
    return r;
}

ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "operator-");
    ComplexMatrix r = a;
    auto rb = b.entries();
    auto re = r.entries();
    for (std::size_t k = 0; k < re.size(); k++) {
        re[k] -= rb[k];
    }
    return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix &a) {
    if (!is_finite(s)) {
        throw DomainError("scalar multiply: non-finite scalar");
    }
    ComplexMatrix r = a;
    for (auto &z : r.entries()) {
        z *= s;
    }
    return r;
}

CVector matvec(const ComplexMatrix &a, std::span<const Complex> x) {
    if (x.size() != a.cols()) {
        throw DimensionError("matvec: vector length " + std::to_string(x.size()) + " does not match " +
                             std::to_string(a.cols()) + " columns");
    }
    CVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); i++) {
        Complex acc = 0;
        for (std::size_t j = 0; j < a.cols(); j++) {
            acc += a(i, j) * x[j];
        }
        y[i] = acc;
    }
    return y;
}

Complex trace(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw DimensionError("trace: matrix is not square");
    }
    Complex t = 0;
    for (std::size_t k = 0; k < a.rows(); k++) {
        t += a(k, k);
    }
    return t;
}

double frobenius_norm(const ComplexMatrix &a) { return norm2(a.entries()); }

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0;
    for (std::size_t k = 0; k < a.entries().size(); k++) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

double unitarity_residual(const ComplexMatrix &u) {
    if (!u.is_square()) {
        throw DimensionError("unitarity_residual: matrix is not square");
    }
    return frobenius_norm(matmul(u, adjoint(u)) - ComplexMatrix::identity(u.rows()));
}

ComplexMatrix embed_top_left(const ComplexMatrix &a, std::size_t n) {
    if (n < a.rows() || n < a.cols()) {
        throw DimensionError("embed_top_left: target smaller than source");
    }
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            r(i, j) = a(i, j);
        }
    }
    return r;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) {
        throw DimensionError("inner: length mismatch");
    }
    Complex acc = 0;
    for (std::size_t k = 0; k < x.size(); k++) {
        acc += std::conj(x[k]) * y[k];
    }
    return acc;
}

double norm2(std::span<const Complex> x) {
    // Scaled accumulation avoids overflow for large entries.
    double scale = 0;
    for (const auto &z : x) {
        scale = std::max(scale, std::max(std::abs(z.real()), std::abs(z.imag())));
    }
    if (scale == 0) {
        return 0;
    }
    double acc = 0;
    for (const auto &z : x) {
        double re = z.real() / scale;
        double im = z.imag() / scale;
        acc += re * re + im * im;
    }
    return scale * std::sqrt(acc);
}

CVector kron_identity_apply(const ComplexMatrix &a, std::size_t identity_dim, std::span<const Complex> x) {
    const std::size_t m = identity_dim;
    if (m == 0 || x.size() != a.cols() * m) {
        throw DimensionError("kron_identity_apply: vector length does not match cols(A) * identity_dim");
    }
    const std::size_t out_dim = a.rows() * m;
    const std::size_t in_dim = a.cols() * m;
    CVector y(out_dim);
    CVector kron_row(in_dim);
    for (std::size_t r = 0; r < out_dim; r++) {
        const std::size_t ra = r / m;
        const std::size_t rb = r % m;
        std::fill(kron_row.begin(), kron_row.end(), Complex{0, 0});
        for (std::size_t ca = 0; ca < a.cols(); ca++) {
            kron_row[ca * m + rb] = a(ra, ca);
        }
        Complex acc = 0;
        for (std::size_t c = 0; c < in_dim; c++) {
            acc += kron_row[c] * x[c];
        }
        y[r] = acc;
    }
    return y;
}

StateVector::StateVector(std::vector<std::size_t> dims, CVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (dims_.empty()) {
        throw DimensionError("StateVector: no local dimensions");
    }
    std::size_t total = 1;
    for (auto d : dims_) {
        if (d == 0) {
            throw DimensionError("StateVector: local dimensions must be positive");
        }
        total *= d;
    }
    if (total != amplitudes_.size()) {
        throw DimensionError("StateVector: " + std::to_string(amplitudes_.size()) +
                             " amplitudes for a space of dimension " + std::to_string(total));
    }
    require_finite(amplitudes_, "StateVector");
}

StateVector StateVector::basis(std::vector<std::size_t> dims, const std::vector<std::size_t> &digits) {
    if (digits.size() != dims.size()) {
        throw DimensionError("StateVector::basis: one digit per factor required");
    }
    std::size_t total = 1;
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); k++) {
        if (digits[k] >= dims[k]) {
            throw DimensionError("StateVector::basis: digit out of range");
        }
        index = index * dims[k] + digits[k];
        total *= dims[k];
    }
    CVector amps(total);
    amps[index] = 1.0;
    return StateVector(std::move(dims), std::move(amps));
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

ComplexMatrix unvec(const StateVector &s) {
    if (s.num_factors() != 2) {
        throw DimensionError("unvec: state is not bipartite");
    }
    const std::size_t da = s.dims()[0];
    const std::size_t db = s.dims()[1];
    ComplexMatrix m(db, da);
    for (std::size_t i = 0; i < da; i++) {
        for (std::size_t j = 0; j < db; j++) {
            m(j, i) = s[i * db + j];
        }
    }
    return m;
}

StateVector vec(const ComplexMatrix &m, std::size_t dim_a, std::size_t dim_b) {
    if (m.rows() != dim_b || m.cols() != dim_a) {
        throw DimensionError("vec: expected a " + std::to_string(dim_b) + "x" + std::to_string(dim_a) +
                             " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    CVector amps(dim_a * dim_b);
    for (std::size_t i = 0; i < dim_a; i++) {
        for (std::size_t j = 0; j < dim_b; j++) {
            amps[i * dim_b + j] = m(j, i);
        }
    }
    return StateVector({dim_a, dim_b}, std::move(amps));
}

StateVector swap_parties(const StateVector &s) {
    if (s.num_factors() != 2) {
        throw DimensionError("swap_parties: state is not bipartite");
    }
    const std::size_t da = s.dims()[0];
    const std::size_t db = s.dims()[1];
    CVector amps(s.size());
    for (std::size_t i = 0; i < da; i++) {
        for (std::size_t j = 0; j < db; j++) {
            amps[j * da + i] = s[i * db + j];
        }
    }
    return StateVector({db, da}, std::move(amps));
}

StateVector split_first_factor(const StateVector &s) {
    const auto &d = s.dims();
    std::size_t rest = std::accumulate(d.begin() + 1, d.end(), std::size_t{1}, std::multiplies<>());
    return StateVector({d[0], rest}, CVector(s.amplitudes().begin(), s.amplitudes().end()));
}

StateVector pad_first_factor(const StateVector &s, std::size_t new_dim_a) {
    if (s.num_factors() != 2) {
        throw DimensionError("pad_first_factor: state is not bipartite");
    }
    if (new_dim_a < s.dims()[0]) {
        throw DimensionError("pad_first_factor: cannot shrink a factor");
    }
    CVector amps(new_dim_a * s.dims()[1]);
    std::copy(s.amplitudes().begin(), s.amplitudes().end(), amps.begin());
    return StateVector({new_dim_a, s.dims()[1]}, std::move(amps));
}

Eigen2x2 eig2x2(const ComplexMatrix &m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw DimensionError("eig2x2: matrix is not 2x2");
    }
    const Complex a = m(0, 0);
    const Complex b = m(0, 1);
    const Complex c = m(1, 0);
    const Complex d = m(1, 1);
    const Complex tr = a + d;
    const Complex diff = a - d;
    // Discriminant written as (a - d)^2 + 4bc to avoid the tr^2 - 4 det cancellation.
    const Complex disc = sum_of_products(diff, diff, 4.0 * b, c);
    const Complex det = sum_of_products(a, d, -b, c);
    const Complex root = std::sqrt(disc);
    const Complex s = (std::real(std::conj(tr) * root) >= 0) ? tr + root : tr - root;
    const Complex big = 0.5 * s;
    const Complex small = std::abs(big) > 0 ? det / big : Complex{0, 0};

    Eigen2x2 out;
    out.values = {small, big};
    if (eigenvalue_less(out.values[1], out.values[0])) {
        std::swap(out.values[0], out.values[1]);
    }
    const double scale = frobenius_norm(m);
    out.vectors[0] = eigenvector_for(m, out.values[0], scale);
    out.vectors[1] = eigenvector_for(m, out.values[1], scale);
    return out;
}

std::size_t ceil_log2(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        k++;
    }
    return k;
}

}  // namespace loccflat
