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

#include <chrono>
#include <cstdint>
#include <vector>

#include "loccflat/dense.h"
#include "loccflat/synthesis.h"
#include "loccflat/tolerances.h"

namespace loccflat {

enum class Hypothesis { kPsi, kPhi };

struct OutcomeSuccess {
    /// Probability of the outcome under the uniform prior over {psi, phi}.
    double probability = 0;
    /// Probability of a correct answer given the outcome (1 for null outcomes).
    double conditional_success = 1;
};

/// Born-rule evaluation of a protocol, rebuilt from the raw states, Alice's
/// vectors and Bob's projectors only.
struct VerificationReport {
    /// Average success under the uniform prior.
    double success_prob = 0;
    std::vector<OutcomeSuccess> per_outcome_success;
    /// max_i |<phi^{|i}|psi^{|i}>| over unnormalized conditional states.
    double max_orthogonality_residual = 0;
    /// ||G - I||_F for the Gram matrix G of Alice's vectors.
    double measurement_residual = 0;
    bool valid_measurement = true;
    std::chrono::nanoseconds elapsed{0};
    Tolerances tolerances{};
};

/// Exact success probability. When `plan` is given, outcomes outside
/// plan->kept_outcomes are scored as failures. Throws DimensionError when the
/// states do not fit the protocol.
VerificationReport success_probability(const StateVector &psi, const StateVector &phi, const Protocol &p,
                                       const TruncatedMessagePlan *plan = nullptr);

/// Overall success of a sequential multiparty protocol tree.
VerificationReport success_probability(const StateVector &psi, const StateVector &phi,
                                       const MultipartyProtocol &p);

/// Monte-Carlo runs with `truth` prepared in `state`; returns the fraction of
/// correct answers. Deterministic in `seed`.
double sample_run(const StateVector &state, Hypothesis truth, const Protocol &p, std::uint64_t seed,
                  std::size_t shots);

}  // namespace loccflat
