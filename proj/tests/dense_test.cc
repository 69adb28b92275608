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

#include <gtest/gtest.h>

#include <cmath>

#include "loccflat/errors.h"
#include "loccflat_tools/random.h"
#include "test_util.h"

using namespace loccflat;
using namespace loccflat::testing;

namespace {

const Complex I1{0, 1};

double vec_dist(const Vec2 &a, const Vec2 &b) { return std::sqrt(std::norm(a[0] - b[0]) + std::norm(a[1] - b[1])); }

// Equal up to a global phase.
bool same_ray(const Vec2 &a, const Vec2 &b, double tol) {
    Complex ov = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
    return std::abs(std::abs(ov) - 1.0) <= tol;
}

}  // namespace

TEST(ComplexMatrix, RejectsBadShapes) {
    EXPECT_THROW(ComplexMatrix(0, 3), DimensionError);
    EXPECT_THROW(ComplexMatrix(2, 2, CVector(3)), DimensionError);
    EXPECT_THROW(ComplexMatrix::from_rows({{1, 2}, {3}}), DimensionError);
}

TEST(ComplexMatrix, RejectsNonFinite) {
    CVector e(4);
    e[2] = Complex(std::nan(""), 0);
    EXPECT_THROW(ComplexMatrix(2, 2, e), DomainError);
    e[2] = Complex(0, INFINITY);
    EXPECT_THROW(ComplexMatrix(2, 2, e), DomainError);
}

TEST(Matmul, IdentityTimesX) {
    auto x = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    EXPECT_EQ(matmul(ComplexMatrix::identity(2), x), x);
}

TEST(Matmul, NilpotentSquare) {
    auto n = ComplexMatrix::from_rows({{0, 1}, {0, 0}});
    EXPECT_EQ(matmul(n, n), ComplexMatrix(2, 2));
}

TEST(Matmul, MatchesTripleLoop) {
    random::Rng rng(11);
    for (auto [p, m, n] : {std::array<std::size_t, 3>{3, 4, 2}, {1, 1, 1}, {5, 1, 7}, {70, 130, 65}, {129, 64, 257}}) {
        auto a = random::gaussian_matrix(rng, p, m);
        auto b = random::gaussian_matrix(rng, m, n);
        auto want = naive_matmul(a, b);
        EXPECT_LE(max_entry_diff(matmul(a, b), want), 1e-12 * (1.0 + naive_frobenius(want))) << p << "x" << m << "x" << n;
    }
}

TEST(Matmul, SparseOperandsMatchTripleLoop) {
    random::Rng rng(12);
    auto a = random::gaussian_matrix(rng, 9, 9);
    for (std::size_t i = 0; i < 9; i++) {
        for (std::size_t j = 0; j < 9; j++) {
            if ((i + 2 * j) % 3 != 0) a(i, j) = 0;
        }
    }
    auto b = random::gaussian_matrix(rng, 9, 4);
    EXPECT_LE(max_entry_diff(matmul(a, b), naive_matmul(a, b)), 1e-13);
}

TEST(Matmul, DimensionMismatch) {
    EXPECT_THROW(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), DimensionError);
    EXPECT_THROW(matvec(ComplexMatrix(2, 3), CVector(2)), DimensionError);
}

TEST(Matmul, Associative) {
    random::Rng rng(13);
    for (int trial = 0; trial < 20; trial++) {
        std::size_t n = 1 + trial % 9;
        auto a = random::gaussian_matrix(rng, n, n + 1);
        auto b = random::gaussian_matrix(rng, n + 1, n + 2);
        auto c = random::gaussian_matrix(rng, n + 2, n);
        auto lhs = matmul(matmul(a, b), c);
        auto rhs = matmul(a, matmul(b, c));
        EXPECT_LE(naive_frobenius(lhs - rhs), 1e-12 * naive_frobenius(lhs));
    }
}

TEST(Adjoint, SingleEntry) {
    auto a = ComplexMatrix::from_rows({{I1, 0}, {0, 0}});
    EXPECT_EQ(adjoint(a), ComplexMatrix::from_rows({{-I1, 0}, {0, 0}}));
}

TEST(Adjoint, HermitianFixedPoint) {
    auto h = ComplexMatrix::from_rows({{2, Complex(1, -3)}, {Complex(1, 3), -5}});
    EXPECT_EQ(adjoint(h), h);
}

TEST(Adjoint, InvolutionAndOracle) {
    random::Rng rng(14);
    for (int trial = 0; trial < 10; trial++) {
        auto a = random::gaussian_matrix(rng, 1 + trial, 3 + trial);
        EXPECT_EQ(adjoint(adjoint(a)), a);
        EXPECT_EQ(adjoint(a), naive_adjoint(a));
        EXPECT_EQ(transpose(conjugate(a)), adjoint(a));
    }
}

TEST(Dense, TraceAndNorms) {
    auto a = ComplexMatrix::from_rows({{1, 2}, {3, Complex(0, 4)}});
    EXPECT_EQ(trace(a), Complex(1, 4));
    EXPECT_NEAR(frobenius_norm(a), std::sqrt(30.0), 1e-15);
    EXPECT_THROW(trace(ComplexMatrix(2, 3)), DimensionError);
    CVector tiny{1e-200, 1e-200};
    EXPECT_NEAR(norm2(tiny) / 1e-200, std::sqrt(2.0), 1e-14);
    CVector huge{1e200, 1e200};
    EXPECT_NEAR(norm2(huge) / 1e200, std::sqrt(2.0), 1e-14);
}

TEST(Dense, InnerConjugatesFirstArgument) {
    CVector x{I1, 0};
    CVector y{1, 0};
    EXPECT_EQ(inner(x, y), -I1);
    EXPECT_EQ(inner(y, x), I1);
}

TEST(Dense, UnitarityResidual) {
    random::Rng rng(15);
    EXPECT_LE(unitarity_residual(random::unitary(rng, 16)), 1e-13);
    EXPECT_NEAR(unitarity_residual(2.0 * ComplexMatrix::identity(3)), 3 * std::sqrt(3.0), 1e-12);
}

TEST(Dense, KronIdentityApplyMatchesNaiveKron) {
    random::Rng rng(16);
    for (auto [r, c, m] : {std::array<std::size_t, 3>{2, 2, 3}, {4, 3, 1}, {1, 5, 4}}) {
        auto a = random::gaussian_matrix(rng, r, c);
        auto x = random::gaussian_vector(rng, c * m);
        auto want = naive_matvec(naive_kron(a, ComplexMatrix::identity(m)), x);
        auto got = kron_identity_apply(a, m, x);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t k = 0; k < got.size(); k++) {
            EXPECT_LE(std::abs(got[k] - want[k]), 1e-13);
        }
    }
}

TEST(StateVector, Validation) {
    EXPECT_THROW(StateVector({2, 2}, CVector(3)), DimensionError);
    EXPECT_THROW(StateVector({0, 2}, CVector(0)), DimensionError);
    EXPECT_THROW(StateVector({}, CVector(1)), DimensionError);
    EXPECT_THROW(StateVector({2}, CVector{Complex(NAN, 0), 0}), DomainError);
    StateVector s({2, 3}, CVector{1, 0, 0, 0, 0, 0});
    EXPECT_TRUE(s.is_normalized(1e-8));
    StateVector t({2}, CVector{1, 1});
    EXPECT_FALSE(t.is_normalized(1e-8));
}

TEST(StateVector, BasisIndexing) {
    auto s = StateVector::basis({3, 4}, {2, 1});
    for (std::size_t k = 0; k < s.size(); k++) {
        EXPECT_EQ(s[k], k == 2 * 4 + 1 ? Complex(1) : Complex(0));
    }
}

TEST(Unvec, BasisState) {
    auto s = StateVector::basis({2, 2}, {0, 0});
    EXPECT_EQ(unvec(s), ComplexMatrix::from_rows({{1, 0}, {0, 0}}));
    EXPECT_EQ(vec(ComplexMatrix::from_rows({{1, 0}, {0, 0}}), 2, 2), s);
}

TEST(Unvec, EntryConvention) {
    // |1>_A |0>_B sits at global index 1 * d_B + 0 and lands in row j = 0, column i = 1.
    auto s = StateVector::basis({2, 3}, {1, 0});
    auto m = unvec(s);
    ASSERT_EQ(m.rows(), 3u);
    ASSERT_EQ(m.cols(), 2u);
    EXPECT_EQ(m(0, 1), Complex(1));
    EXPECT_EQ(m(1, 0), Complex(0));
}

TEST(Unvec, BellPair) {
    const double r = 1 / std::sqrt(2.0);
    StateVector bell({2, 2}, CVector{r, 0, 0, r});
    auto want = Complex(r) * ComplexMatrix::identity(2);
    EXPECT_EQ(unvec(bell), want);
    EXPECT_EQ(vec(want, 2, 2), bell);
}

TEST(Unvec, BijectionIsExact) {
    random::Rng rng(17);
    for (int trial = 0; trial < 50; trial++) {
        std::size_t da = 1 + trial % 5, db = 1 + trial % 7;
        StateVector s({da, db}, random::gaussian_vector(rng, da * db));
        EXPECT_EQ(vec(unvec(s), da, db), s);
        auto m = random::gaussian_matrix(rng, db, da);
        EXPECT_EQ(unvec(vec(m, da, db)), m);
    }
}

TEST(Unvec, Errors) {
    EXPECT_THROW(unvec(StateVector({2, 2, 2}, CVector(8))), DimensionError);
    EXPECT_THROW(vec(ComplexMatrix(2, 3), 2, 3), DimensionError);
}

TEST(Reshape, SwapPartiesMovesAmplitudes) {
    random::Rng rng(18);
    StateVector s({3, 5}, random::gaussian_vector(rng, 15));
    auto t = swap_parties(s);
    EXPECT_EQ(t.dims(), (std::vector<std::size_t>{5, 3}));
    for (std::size_t i = 0; i < 3; i++) {
        for (std::size_t j = 0; j < 5; j++) {
            EXPECT_EQ(t[j * 3 + i], s[i * 5 + j]);
        }
    }
    EXPECT_EQ(swap_parties(t), s);
}

TEST(Reshape, PadAndSplit) {
    StateVector s({3, 2}, CVector{1, 2, 3, 4, 5, 6});
    auto p = pad_first_factor(s, 4);
    EXPECT_EQ(p.dims(), (std::vector<std::size_t>{4, 2}));
    EXPECT_EQ(p[5], Complex(6));
    EXPECT_EQ(p[6], Complex(0));
    EXPECT_EQ(p[7], Complex(0));
    EXPECT_THROW(pad_first_factor(s, 2), DimensionError);

    StateVector t({2, 3, 2}, CVector(12, 1.0));
    auto b = split_first_factor(t);
    EXPECT_EQ(b.dims(), (std::vector<std::size_t>{2, 6}));
}

TEST(Eig2x2, Diagonal) {
    auto e = eig2x2(ComplexMatrix::from_rows({{1, 0}, {0, -1}}));
    // Equal moduli: ascending real part puts -1 first.
    EXPECT_EQ(e.values[0], Complex(-1));
    EXPECT_EQ(e.values[1], Complex(1));
    EXPECT_TRUE(same_ray(e.vectors[0], {0, 1}, 1e-15));
    EXPECT_TRUE(same_ray(e.vectors[1], {1, 0}, 1e-15));
}

TEST(Eig2x2, PauliX) {
    auto e = eig2x2(ComplexMatrix::from_rows({{0, 1}, {1, 0}}));
    const double r = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(e.values[0] - Complex(-1)), 0, 1e-15);
    EXPECT_NEAR(std::abs(e.values[1] - Complex(1)), 0, 1e-15);
    EXPECT_TRUE(same_ray(e.vectors[0], {r, -r}, 1e-15));
    EXPECT_TRUE(same_ray(e.vectors[1], {r, r}, 1e-15));
}

TEST(Eig2x2, NilpotentJordanBlock) {
    auto e = eig2x2(ComplexMatrix::from_rows({{0, 1}, {0, 0}}));
    EXPECT_EQ(e.values[0], Complex(0));
    EXPECT_EQ(e.values[1], Complex(0));
    EXPECT_LE(vec_dist(e.vectors[0], {1, 0}), 1e-15);
    EXPECT_LE(vec_dist(e.vectors[1], {1, 0}), 1e-15);
}

TEST(Eig2x2, ScalarMatrixGivesE0) {
    auto e = eig2x2(Complex(3, 1) * ComplexMatrix::identity(2));
    EXPECT_EQ(e.values[0], Complex(3, 1));
    EXPECT_LE(vec_dist(e.vectors[0], {1, 0}), 1e-15);
    auto z = eig2x2(ComplexMatrix(2, 2));
    EXPECT_LE(vec_dist(z.vectors[1], {1, 0}), 1e-15);
}

TEST(Eig2x2, RejectsNonSquare) { EXPECT_THROW(eig2x2(ComplexMatrix(3, 3)), DimensionError); }

TEST(Eig2x2, RandomResidualTraceDeterminant) {
    random::Rng rng(19);
    for (int trial = 0; trial < 2000; trial++) {
        double scale = std::pow(10.0, (trial % 13) - 6);
        auto m = Complex(scale) * random::gaussian_matrix(rng, 2, 2);
        auto e = eig2x2(m);
        const double f = naive_frobenius(m);
        for (int k = 0; k < 2; k++) {
            CVector v{e.vectors[k][0], e.vectors[k][1]};
            EXPECT_NEAR(naive_norm(v), 1.0, 1e-14);
            CVector mv = naive_matvec(m, v);
            CVector res{mv[0] - e.values[k] * v[0], mv[1] - e.values[k] * v[1]};
            EXPECT_LE(naive_norm(res), 1e-10 * f) << "trial " << trial;
        }
        const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        EXPECT_LE(std::abs(e.values[0] + e.values[1] - naive_trace(m)), 1e-10 * (1 + f * f));
        EXPECT_LE(std::abs(e.values[0] * e.values[1] - det), 1e-10 * (1 + f * f));
        EXPECT_LE(std::abs(e.values[0]), std::abs(e.values[1]));
    }
}

TEST(Eig2x2, NearDefective) {
    for (double delta : {1e-4, 1e-8, 1e-12, 1e-16, 1e-20}) {
        auto m = ComplexMatrix::from_rows({{1, 1}, {delta, 1}});
        auto e = eig2x2(m);
        const double f = naive_frobenius(m);
        for (int k = 0; k < 2; k++) {
            CVector v{e.vectors[k][0], e.vectors[k][1]};
            CVector mv = naive_matvec(m, v);
            CVector res{mv[0] - e.values[k] * v[0], mv[1] - e.values[k] * v[1]};
            EXPECT_LE(naive_norm(res), 1e-10 * f) << delta;
        }
    }
}

TEST(Eig2x2, CancellationProneRoots) {
    // Roots 1e8 and 1e-8: the small root must keep its relative accuracy.
    auto m = ComplexMatrix::from_rows({{1e8, 0}, {0, 1e-8}});
    auto e = eig2x2(matmul(matmul(ComplexMatrix::from_rows({{1, 1}, {0, 1}}), m),
                           ComplexMatrix::from_rows({{1, -1}, {0, 1}})));
    EXPECT_NEAR(e.values[0].real(), 1e-8, 1e-20);
    EXPECT_NEAR(e.values[1].real(), 1e8, 1e-6);
}

TEST(Dense, CeilLog2) {
    EXPECT_EQ(ceil_log2(1), 0u);
    EXPECT_EQ(ceil_log2(2), 1u);
    EXPECT_EQ(ceil_log2(3), 2u);
    EXPECT_EQ(ceil_log2(8), 3u);
    EXPECT_EQ(ceil_log2(9), 4u);
}
