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
#include <optional>
#include <vector>

#include "loccflat/dense.h"
#include "loccflat/flatten.h"
#include "loccflat/tolerances.h"

namespace loccflat {

/// Which factor of the input states performs the first (projective) measurement.
enum class MeasuringParty { kFirst, kSecond };

/// Perfect one-way LOCC protocol for a pair of orthogonal bipartite states.
///
/// The measuring party ("Alice") measures in the orthonormal basis
/// `alice_vectors` (outcome i is the projector onto alice_vectors[i]) of her
/// zero-padded space and sends i. The receiver ("Bob") then projects onto
/// bob_projectors[i] and answers psi on a click, phi otherwise. A null entry
/// means psi cannot produce outcome i and Bob answers phi unconditionally.
struct Protocol {
    MeasuringParty measuring_party = MeasuringParty::kFirst;
    std::size_t padded_dim_a = 0;
    std::size_t original_dim_a = 0;
    std::size_t dim_b = 0;
    std::vector<CVector> alice_vectors;
    std::vector<std::optional<CVector>> bob_projectors;
    std::vector<double> outcome_probs_psi;
    std::vector<double> outcome_probs_phi;

    // Diagnostics; verification never reads these.
    Complex input_overlap{0, 0};
    double flattening_residual = 0;
    Tolerances tolerances{};
};

enum class ConditionalStatePath {
    /// (conj(U) (x) I_B)|psi> formed as a dense Kronecker product, then sliced.
    kDenseKronecker,
    /// Direct contraction of each basis vector with the amplitude slices.
    kDirect,
};

struct SynthesisOptions {
    /// Lets the smaller factor measure first when d_A > d_B.
    bool allow_role_swap = true;
    ConditionalStatePath conditional_path = ConditionalStatePath::kDenseKronecker;
    FlattenPath flatten_path = FlattenPath::kDense;
};

/// M_phi^* M_psi: the d_A x d_A matrix whose (i', i) entry is <phi^{|i'}|psi^{|i}>.
ComplexMatrix overlap_matrix(const StateVector &psi, const StateVector &phi);

/// Conditional state (<e| (x) I_B)|s> of the second factor given a unit
/// vector e on the first factor. Unnormalized; its squared norm is the
/// probability of outcome e.
CVector conditional_state(const StateVector &s, std::span<const Complex> e);

/// Builds the perfect discrimination protocol. Throws NotNormalized,
/// NonOrthogonalInput or DimensionError.
Protocol synthesize(const StateVector &psi, const StateVector &phi, const SynthesisOptions &options = {});

struct TruncatedMessagePlan {
    /// Ascending outcome indices.
    std::vector<std::size_t> kept_outcomes;
    double epsilon = 1;
    /// ceil(log2 |kept|) + 1.
    std::size_t bits = 1;
    double retained_prob_psi = 0;
    double retained_prob_phi = 0;
    /// False only when the exact search exhausted its budget and the greedy
    /// (or best improved) set was kept without a minimality certificate.
    bool minimality_certified = true;
};

/// Smallest outcome subset retaining at least 1 - epsilon of the
/// probability mass under both states.
TruncatedMessagePlan epsilon_truncate(const Protocol &p, double epsilon);

/// Shortest prefix of the outcomes ordered by descending min(p_psi, p_phi)
/// (ties: descending p_psi + p_phi, then index). Nested in epsilon.
TruncatedMessagePlan greedy_truncate(const Protocol &p, double epsilon);

std::size_t message_bits(std::size_t kept);

/// How a branch of a multiparty protocol tree is resolved.
struct Branch {
    /// Node handling the remaining parties, when both conditional states survive.
    std::optional<std::size_t> child;
    /// Answer when there is no child and the node is not a leaf.
    bool guess_psi = false;
};

struct ProtocolNode {
    /// Index of the party measuring at this node.
    std::size_t party = 0;
    /// Bipartite protocol for party vs. the product of the later parties.
    Protocol protocol;
    std::vector<Branch> branches;
    /// True when exactly two parties remain and `protocol.bob_projectors` decide.
    bool is_leaf = false;
};

/// Sequential one-way protocol: party 0 measures, then party 1 conditioned on
/// the outcome, ..., and the last party projects. nodes[0] is the root.
struct MultipartyProtocol {
    std::vector<std::size_t> dims;
    std::vector<ProtocolNode> nodes;
};

MultipartyProtocol synthesize_multipartite(const StateVector &psi, const StateVector &phi,
                                           const SynthesisOptions &options = {});

}  // namespace loccflat
