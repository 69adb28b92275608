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
#include <functional>
#include <numeric>

#include "loccflat/errors.h"
#include "loccflat/synthesis.h"
#include "synthesis_internal.h"

namespace loccflat {

namespace {

std::size_t build_node(const StateVector &psi, const StateVector &phi, std::size_t party,
                       const SynthesisOptions &options, MultipartyProtocol &out) {
    const std::vector<std::size_t> rest_dims(psi.dims().begin() + 1, psi.dims().end());
    internal::SynthesisOutput synth =
        internal::synthesize_bipartite(split_first_factor(psi), split_first_factor(phi), options);

    const std::size_t index = out.nodes.size();
    out.nodes.push_back(ProtocolNode{party, {}, {}, rest_dims.size() == 1});
    const std::size_t outcomes = synth.protocol.padded_dim_a;
    std::vector<Branch> branches(outcomes);

    if (rest_dims.size() > 1) {
        for (std::size_t i = 0; i < outcomes; i++) {
            const double norm_psi = norm2(synth.psi_conditionals[i]);
            const double norm_phi = norm2(synth.phi_conditionals[i]);
            if (norm_psi > kZeroTol && norm_phi > kZeroTol) {
                CVector next_psi = synth.psi_conditionals[i];
                CVector next_phi = synth.phi_conditionals[i];
                for (auto &z : next_psi) {
                    z /= norm_psi;
                }
                for (auto &z : next_phi) {
                    z /= norm_phi;
                }
                // Renormalizing a low-probability branch inflates the rounding
                // in <phi|psi>; project it out so the branch stays orthogonal.
                const Complex leak = inner(next_psi, next_phi);
                for (std::size_t k = 0; k < next_phi.size(); k++) {
                    next_phi[k] -= leak * next_psi[k];
                }
                const double renorm = norm2(next_phi);
                if (renorm < 0.5) {
                    // Only reachable for branches of negligible weight.
                    branches[i].guess_psi = norm_psi >= norm_phi;
                    continue;
                }
                for (auto &z : next_phi) {
                    z /= renorm;
                }
                branches[i].child = build_node(StateVector(rest_dims, std::move(next_psi)),
                                               StateVector(rest_dims, std::move(next_phi)), party + 1, options, out);
            } else {
                branches[i].guess_psi = norm_psi > kZeroTol;
            }
        }
    }
    out.nodes[index].protocol = std::move(synth.protocol);
    out.nodes[index].branches = std::move(branches);
    return index;
}

}  // namespace

MultipartyProtocol synthesize_multipartite(const StateVector &psi, const StateVector &phi,
                                           const SynthesisOptions &options) {
    if (psi.num_factors() < 3) {
        throw DimensionError("synthesize_multipartite: at least three parties required");
    }
    internal::validate_pair(psi, phi);
    SynthesisOptions sequential = options;
    sequential.allow_role_swap = false;
    MultipartyProtocol out;
    out.dims = psi.dims();
    build_node(psi, phi, 0, sequential, out);
    return out;
}

}  // namespace loccflat
