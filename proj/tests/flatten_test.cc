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

#include <gtest/gtest.h>

#include <cmath>

#include "loccflat/errors.h"
#include "loccflat_tools/random.h"
#include "test_util.h"

using namespace loccflat;
using namespace loccflat::testing;

namespace {

// diag(U^* m U) for the 2x2 case, by the naive product.
std::array<Complex, 2> diag_after_uflat2(const ComplexMatrix &u, const ComplexMatrix &m) {
    auto c = naive_matmul(naive_matmul(naive_adjoint(u), m), u);
    return {c(0, 0), c(1, 1)};
}

double max_diag_deviation(const ComplexMatrix &c, Complex target) {
    double worst = 0;
    for (std::size_t k = 0; k < c.rows(); k++) {
        worst = std::max(worst, std::abs(c(k, k) - target));
    }
    return worst;
}

}  // namespace

TEST(Uflat2, NilpotentZeroBranchIsIdentity) {
    auto m = ComplexMatrix::from_rows({{0, 1}, {0, 0}});
    auto u = uflat2(m);
    EXPECT_LE(max_entry_diff(u, ComplexMatrix::identity(2)), 1e-15);
    auto d = diag_after_uflat2(u, m);
    EXPECT_EQ(d[0], Complex(0));
    EXPECT_EQ(d[1], Complex(0));
}

TEST(Uflat2, DiagPlusMinusOne) {
    auto m = ComplexMatrix::from_rows({{1, 0}, {0, -1}});
    auto u = uflat2(m);
    const double r = 1 / std::sqrt(2.0);
    CVector col0{u(0, 0), u(1, 0)};
    CVector col1{u(0, 1), u(1, 1)};
    // u = (1, 1)/sqrt2 and v = (1, -1)/sqrt2 up to the overall sign of v.
    EXPECT_NEAR(std::abs(naive_inner(col0, CVector{r, r})), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(naive_inner(col1, CVector{r, -r})), 1.0, 1e-15);
    auto d = diag_after_uflat2(u, m);
    EXPECT_LE(std::abs(d[0]), 1e-15);
    EXPECT_LE(std::abs(d[1]), 1e-15);
}

TEST(Uflat2, NonzeroTrace) {
    auto m = ComplexMatrix::from_rows({{2, 0}, {0, 0}});
    auto d = diag_after_uflat2(uflat2(m), m);
    EXPECT_LE(std::abs(d[0] - 1.0), 1e-15);
    EXPECT_LE(std::abs(d[1] - 1.0), 1e-15);
}

TEST(Uflat2, RejectsNon2x2) { EXPECT_THROW(uflat2(ComplexMatrix(3, 3)), DimensionError); }

TEST(Uflat2, RandomMatricesFlatAndUnitary) {
    random::Rng rng(21);
    for (int trial = 0; trial < 2000; trial++) {
        ComplexMatrix m = trial % 2 ? random::gaussian_matrix(rng, 2, 2) : random::trace_zero_hermitian(rng, 2);
        if (trial % 7 == 0) {
            // Nearly defective shifted matrix.
            m = ComplexMatrix::from_rows({{1, 1}, {std::pow(10.0, -(trial % 17)), 1}});
        }
        auto u = uflat2(m);
        EXPECT_LE(naive_unitarity_defect(u), 1e-12) << trial;
        auto d = diag_after_uflat2(u, m);
        const Complex half = naive_trace(m) / 2.0;
        EXPECT_LE(std::abs(d[0] - half), 1e-10 * (1 + naive_frobenius(m))) << trial;
        EXPECT_LE(std::abs(d[1] - half), 1e-10 * (1 + naive_frobenius(m))) << trial;
    }
}

TEST(Uflatgen, TwoByTwoMatchesUflat2) {
    auto m = ComplexMatrix::from_rows({{1, 0}, {0, -1}});
    auto r = uflatgen(m);
    EXPECT_EQ(r.layers, 1u);
    EXPECT_EQ(r.padded_dim, 2u);
    // uflatgen stores U^* of the single-layer unitary.
    EXPECT_LE(max_entry_diff(r.unitary, naive_adjoint(uflat2(m))), 1e-15);
}

TEST(Uflatgen, ThreeDimDiagonal) {
    auto m = ComplexMatrix::from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, -1}});
    auto r = uflatgen(m);
    EXPECT_EQ(r.padded_dim, 4u);
    EXPECT_EQ(r.original_dim, 3u);
    EXPECT_EQ(r.layers, 2u);
    auto c = naive_conjugate_padded(r.unitary, m);
    EXPECT_LE(max_diag_deviation(c, 0), 1e-10);
}

TEST(Uflatgen, FourDimHermitian) {
    random::Rng rng(22);
    for (int trial = 0; trial < 20; trial++) {
        auto m = random::trace_zero_hermitian(rng, 4);
        auto r = uflatgen(m);
        auto c = naive_conjugate_padded(r.unitary, m);
        EXPECT_LE(max_diag_deviation(c, 0), 1e-10 * naive_frobenius(m));
        EXPECT_LE(naive_unitarity_defect(r.unitary), 1e-12);
    }
}

TEST(Uflatgen, ZeroMatrix) {
    auto m = ComplexMatrix(3, 3);
    auto r = uflatgen(m);
    EXPECT_EQ(verify_flat(m, r), 0.0);
    EXPECT_LE(naive_unitarity_defect(r.unitary), 1e-15);
}

TEST(Uflatgen, Errors) {
    EXPECT_THROW(uflatgen(ComplexMatrix(1, 1)), DimensionError);
    EXPECT_THROW(uflatgen(ComplexMatrix(2, 3)), DimensionError);
}

TEST(Uflatgen, LayerCount) {
    for (std::size_t d : {2, 3, 4, 5, 7, 8, 9, 16, 17, 33}) {
        std::size_t calls = 0;
        FlattenOptions opt;
        opt.on_layer = [&](std::size_t layer, const ComplexMatrix &) { EXPECT_EQ(layer, calls++); };
        random::Rng rng(d);
        auto r = uflatgen(random::trace_zero_matrix(rng, d), opt);
        EXPECT_EQ(r.layers, ceil_log2(d));
        EXPECT_EQ(calls, ceil_log2(d));
        EXPECT_EQ(r.padded_dim, std::size_t{1} << ceil_log2(d));
    }
}

TEST(Uflatgen, ProgressBlocksBecomeConstant) {
    random::Rng rng(23);
    for (std::size_t d : {4, 6, 8, 13, 16, 32}) {
        auto m = random::gaussian_matrix(rng, d, d);
        const double tol = 1e-10 * (1 + naive_frobenius(m));
        FlattenOptions opt;
        opt.on_layer = [&](std::size_t p, const ComplexMatrix &cur) {
            const std::size_t block = std::size_t{2} << p;
            for (std::size_t start = 0; start < cur.rows(); start += block) {
                for (std::size_t k = start; k < start + block; k++) {
                    EXPECT_LE(std::abs(cur(k, k) - cur(start, start)), tol) << "d=" << d << " layer=" << p;
                }
            }
        };
        uflatgen(m, opt);
    }
}

TEST(Uflatgen, RandomTraceZeroUpTo128) {
    random::Rng rng(24);
    for (std::size_t d : {2, 3, 5, 8, 13, 16, 31, 64, 128}) {
        for (int trial = 0; trial < 3; trial++) {
            auto m = trial % 2 ? random::trace_zero_hermitian(rng, d) : random::trace_zero_matrix(rng, d);
            auto r = uflatgen(m);
            auto c = naive_conjugate_padded(r.unitary, m);
            EXPECT_LE(max_diag_deviation(c, 0), 1e-9 * (1 + naive_frobenius(m))) << d;
            EXPECT_LE(naive_unitarity_defect(r.unitary), 1e-9 * r.padded_dim) << d;
            EXPECT_LE(r.residual, 1e-9 * (1 + naive_frobenius(m)));
        }
    }
}

TEST(Uflatgen, EqualDiagonalForNonzeroTrace) {
    random::Rng rng(25);
    for (std::size_t d : {2, 3, 6, 16, 27}) {
        auto m = random::gaussian_matrix(rng, d, d);
        m(0, 0) += Complex(3, -2);
        auto r = uflatgen(m);
        auto c = naive_conjugate_padded(r.unitary, m);
        const Complex target = naive_trace(m) / static_cast<double>(r.padded_dim);
        EXPECT_LE(max_diag_deviation(c, target), 1e-9 * (1 + naive_frobenius(m))) << d;
    }
}

TEST(Uflatgen, BlockSparsePathMatchesDense) {
    random::Rng rng(26);
    for (std::size_t d : {2, 5, 8, 19, 64}) {
        auto m = random::gaussian_matrix(rng, d, d);
        auto dense = uflatgen(m);
        auto sparse = uflatgen(m, {FlattenPath::kBlockSparse, {}});
        EXPECT_LE(max_entry_diff(dense.unitary, sparse.unitary), 1e-11 * (1 + naive_frobenius(m))) << d;
        EXPECT_LE(verify_flat(m, sparse), 1e-9 * (1 + naive_frobenius(m)));
    }
}

TEST(VerifyFlat, MatchesOracleAndFlagsWrongUnitary) {
    auto m = ComplexMatrix::from_rows({{1, 0}, {0, -1}});
    auto r = uflatgen(m);
    EXPECT_LE(verify_flat(m, r), 1e-10);

    random::Rng rng(27);
    auto g = random::trace_zero_matrix(rng, 5);
    auto good = uflatgen(g);
    auto c = naive_conjugate_padded(good.unitary, g);
    EXPECT_NEAR(verify_flat(g, good), max_diag_deviation(c, 0), 1e-12);

    FlatteningResult wrong = good;
    wrong.unitary = ComplexMatrix::identity(good.padded_dim);
    const double bad = verify_flat(g, wrong);
    EXPECT_GT(bad, 1e-3);
    EXPECT_NEAR(bad, max_diag_deviation(naive_conjugate_padded(wrong.unitary, g), 0), 1e-12);
}
