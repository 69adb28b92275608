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

#include <vector>

#include "loccflat/synthesis.h"

namespace loccflat::internal {

struct SynthesisOutput {
    Protocol protocol;
    /// Unnormalized conditional states of the receiver, per outcome.
    std::vector<CVector> psi_conditionals;
    std::vector<CVector> phi_conditionals;
};

/// Checks unit norm, matching bipartite dims and orthogonality; returns <phi|psi>.
Complex validate_pair(const StateVector &psi, const StateVector &phi);

SynthesisOutput synthesize_bipartite(const StateVector &psi, const StateVector &phi,
                                     const SynthesisOptions &options);

}  // namespace loccflat::internal
