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
#include <cstddef>
#include <optional>
#include <vector>

#include "loccflat/dense.h"
#include "loccflat/simulator.h"
#include "loccflat/synthesis.h"

namespace loccflat {

/// Channel A -> B given by Kraus operators, each output_dim x input_dim.
struct KrausChannel {
    std::size_t input_dim = 0;
    std::size_t output_dim = 0;
    std::vector<ComplexMatrix> kraus;

    /// Throws DimensionError on shape problems and TracePreservationError when
    /// ||sum_k K_k^* K_k - I||_F exceeds kZeroTol * input_dim.
    void validate() const;
    /// sum_k K_k rho K_k^*.
    ComplexMatrix apply(const ComplexMatrix &rho) const;
};

/// Isometry V : A -> B (x) E with V = sum_k K_k (x) |k>_E; the row index of
/// |j>_B |k>_E is j * dim_e + k.
struct StinespringIsometry {
    ComplexMatrix v;
    std::size_t dim_b;
    std::size_t dim_e;

    /// Tr_E(V |x><x| V^*).
    ComplexMatrix output_of_pure(std::span<const Complex> x) const;
};

StinespringIsometry stinespring(const KrausChannel &ch);

/// One-shot zero-error one-bit code assisted by the environment: the
/// message b is encoded as encoder_states[b], the environment measures E
/// first and sends its outcome, and the receiver decodes on B.
struct EnvCode {
    std::array<CVector, 2> encoder_states;
    /// V|e_0>, V|e_1> reordered to dims [d_E, d_B].
    std::array<StateVector, 2> code_states;
    Protocol protocol;
    VerificationReport report;
    double error_prob = 1;
};

/// Builds the code; the default encoder is |0>, |1>. Throws DomainError when
/// input_dim < 2 or when a supplied encoder pair is not orthonormal.
EnvCode build_env_code(const KrausChannel &ch, const std::optional<std::array<CVector, 2>> &encoder = std::nullopt);

}  // namespace loccflat
