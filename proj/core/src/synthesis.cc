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

#include <cmath>
#include <string>

#include "loccflat/errors.h"
#include "loccflat/synthesis.h"
#include "synthesis_internal.h"

namespace loccflat {

namespace internal {

Complex validate_pair(const StateVector &psi, const StateVector &phi) {
    if (psi.dims() != phi.dims()) {
        throw DimensionError("states have different local dimensions");
    }
    if (!psi.is_normalized(kNormTol)) {
        throw NotNormalized("psi has norm " + std::to_string(psi.norm()));
    }
    if (!phi.is_normalized(kNormTol)) {
        throw NotNormalized("phi has norm " + std::to_string(phi.norm()));
    }
    const Complex overlap = inner(phi.amplitudes(), psi.amplitudes());
    if (std::abs(overlap) > kOrthTol) {
        throw NonOrthogonalInput("states are not orthogonal: |<phi|psi>| = " + std::to_string(std::abs(overlap)),
                                 std::abs(overlap));
    }
    return overlap;
}

SynthesisOutput synthesize_bipartite(const StateVector &psi_in, const StateVector &phi_in,
                                     const SynthesisOptions &options) {
    if (psi_in.num_factors() != 2 || phi_in.num_factors() != 2) {
        throw DimensionError("synthesize: states must be bipartite");
    }
    const Complex overlap = validate_pair(psi_in, phi_in);

    SynthesisOutput out;
    Protocol &p = out.protocol;
    const bool swap = options.allow_role_swap && psi_in.dims()[0] > psi_in.dims()[1];
    const StateVector psi_oriented = swap ? swap_parties(psi_in) : psi_in;
    const StateVector phi_oriented = swap ? swap_parties(phi_in) : phi_in;
    p.measuring_party = swap ? MeasuringParty::kSecond : MeasuringParty::kFirst;
    p.original_dim_a = psi_oriented.dims()[0];
    p.dim_b = psi_oriented.dims()[1];
    p.padded_dim_a = std::size_t{1} << ceil_log2(p.original_dim_a);
    p.input_overlap = overlap;

    const StateVector psi = pad_first_factor(psi_oriented, p.padded_dim_a);
    const StateVector phi = pad_first_factor(phi_oriented, p.padded_dim_a);
    const ComplexMatrix overlaps = overlap_matrix(psi, phi);

    ComplexMatrix unitary = ComplexMatrix::identity(p.padded_dim_a);
    p.flattening_residual = 0;
    if (p.padded_dim_a >= 2) {
        FlatteningResult flat = uflatgen(overlaps, {.path = options.flatten_path, .on_layer = {}});
        unitary = std::move(flat.unitary);
        p.flattening_residual = flat.residual;
    }

    // Outcome i projects onto U^T|i>, i.e. the vector whose k-th component is U(i, k).
    const std::size_t n = p.padded_dim_a;
    const std::size_t db = p.dim_b;
    p.alice_vectors.reserve(n);
    for (std::size_t i = 0; i < n; i++) {
        auto r = unitary.row(i);
        p.alice_vectors.emplace_back(r.begin(), r.end());
    }

    if (options.conditional_path == ConditionalStatePath::kDenseKronecker) {
        const ComplexMatrix rotation = conjugate(unitary);
        const CVector psi_rot = kron_identity_apply(rotation, db, psi.amplitudes());
        const CVector phi_rot = kron_identity_apply(rotation, db, phi.amplitudes());
        for (std::size_t i = 0; i < n; i++) {
            out.psi_conditionals.emplace_back(psi_rot.begin() + i * db, psi_rot.begin() + (i + 1) * db);
            out.phi_conditionals.emplace_back(phi_rot.begin() + i * db, phi_rot.begin() + (i + 1) * db);
        }
    } else {
        for (std::size_t i = 0; i < n; i++) {
            out.psi_conditionals.push_back(conditional_state(psi, p.alice_vectors[i]));
            out.phi_conditionals.push_back(conditional_state(phi, p.alice_vectors[i]));
        }
    }

    for (std::size_t i = 0; i < n; i++) {
        const double norm_psi = norm2(out.psi_conditionals[i]);
        const double norm_phi = norm2(out.phi_conditionals[i]);
        p.outcome_probs_psi.push_back(norm_psi * norm_psi);
        p.outcome_probs_phi.push_back(norm_phi * norm_phi);
        if (norm_psi > kZeroTol) {
            CVector b = out.psi_conditionals[i];
            for (auto &z : b) {
                z /= norm_psi;
            }
            p.bob_projectors.emplace_back(std::move(b));
        } else {
            p.bob_projectors.emplace_back(std::nullopt);
        }
    }
    return out;
}

}  // namespace internal

ComplexMatrix overlap_matrix(const StateVector &psi, const StateVector &phi) {
    if (psi.num_factors() != 2 || phi.num_factors() != 2) {
        throw DimensionError("overlap_matrix: states must be bipartite");
    }
    if (psi.dims() != phi.dims()) {
        throw DimensionError("overlap_matrix: states have different local dimensions");
    }
    return matmul(adjoint(unvec(phi)), unvec(psi));
}

CVector conditional_state(const StateVector &s, std::span<const Complex> e) {
    if (s.num_factors() != 2) {
        throw DimensionError("conditional_state: state must be bipartite");
    }
    const std::size_t da = s.dims()[0];
    const std::size_t db = s.dims()[1];
    if (e.size() != da) {
        throw DimensionError("conditional_state: basis vector has length " + std::to_string(e.size()) +
                             ", expected " + std::to_string(da));
    }
    CVector out(db);
    for (std::size_t k = 0; k < da; k++) {
        const Complex c = std::conj(e[k]);
        if (c == Complex{0, 0}) {
            continue;
        }
        for (std::size_t j = 0; j < db; j++) {
            out[j] += c * s[k * db + j];
        }
    }
    return out;
}

Protocol synthesize(const StateVector &psi, const StateVector &phi, const SynthesisOptions &options) {
    return internal::synthesize_bipartite(psi, phi, options).protocol;
}

}  // namespace loccflat
