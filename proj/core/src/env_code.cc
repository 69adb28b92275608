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

#include "loccflat/env_code.h"

#include <cmath>
#include <string>

#include "loccflat/errors.h"
#include "loccflat/tolerances.h"

namespace loccflat {

void KrausChannel::validate() const {
    if (input_dim == 0 || output_dim == 0 || kraus.empty()) {
        throw DimensionError("KrausChannel: empty channel description");
    }
    ComplexMatrix sum(input_dim, input_dim);
    for (const auto &k : kraus) {
        if (k.rows() != output_dim || k.cols() != input_dim) {
            throw DimensionError("KrausChannel: Kraus operator is " + std::to_string(k.rows()) + "x" +
                                 std::to_string(k.cols()) + ", expected " + std::to_string(output_dim) + "x" +
                                 std::to_string(input_dim));
        }
        sum = sum + matmul(adjoint(k), k);
    }
    const double defect = frobenius_norm(sum - ComplexMatrix::identity(input_dim));
    if (defect > kZeroTol * static_cast<double>(input_dim)) {
        throw TracePreservationError("KrausChannel: sum K^*K deviates from identity by " + std::to_string(defect));
    }
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix &rho) const {
    ComplexMatrix out(output_dim, output_dim);
    for (const auto &k : kraus) {
        out = out + matmul(matmul(k, rho), adjoint(k));
    }
    return out;
}

ComplexMatrix StinespringIsometry::output_of_pure(std::span<const Complex> x) const {
    const CVector y = matvec(v, x);
    ComplexMatrix rho(dim_b, dim_b);
    for (std::size_t j = 0; j < dim_b; j++) {
        for (std::size_t jp = 0; jp < dim_b; jp++) {
            Complex acc = 0;
            for (std::size_t k = 0; k < dim_e; k++) {
                acc += y[j * dim_e + k] * std::conj(y[jp * dim_e + k]);
            }
            rho(j, jp) = acc;
        }
    }
    return rho;
}

StinespringIsometry stinespring(const KrausChannel &ch) {
    ch.validate();
    const std::size_t de = ch.kraus.size();
    ComplexMatrix v(ch.output_dim * de, ch.input_dim);
    for (std::size_t k = 0; k < de; k++) {
        for (std::size_t j = 0; j < ch.output_dim; j++) {
            for (std::size_t a = 0; a < ch.input_dim; a++) {
                v(j * de + k, a) = ch.kraus[k](j, a);
            }
        }
    }
    return StinespringIsometry{std::move(v), ch.output_dim, de};
}

EnvCode build_env_code(const KrausChannel &ch, const std::optional<std::array<CVector, 2>> &encoder) {
    if (ch.input_dim < 2) {
        throw DomainError("build_env_code: channel input dimension must exceed 1, got " +
                          std::to_string(ch.input_dim));
    }
    const StinespringIsometry iso = stinespring(ch);

    std::array<CVector, 2> inputs;
    if (encoder) {
        inputs = *encoder;
        for (const auto &e : inputs) {
            if (e.size() != ch.input_dim) {
                throw DimensionError("build_env_code: encoder state has wrong length");
            }
            if (std::abs(norm2(e) - 1.0) > kNormTol) {
                throw DomainError("build_env_code: encoder state is not normalized");
            }
        }
        if (std::abs(inner(inputs[0], inputs[1])) > kOrthTol) {
            throw DomainError("build_env_code: encoder states are not orthogonal");
        }
    } else {
        for (std::size_t b = 0; b < 2; b++) {
            inputs[b] = CVector(ch.input_dim);
            inputs[b][b] = 1.0;
        }
    }

    // V|e> lives on B (x) E; the environment measures, so reorder to E (x) B.
    auto code_state = [&](const CVector &x) {
        return swap_parties(StateVector({iso.dim_b, iso.dim_e}, matvec(iso.v, x)));
    };
    std::array<StateVector, 2> code{code_state(inputs[0]), code_state(inputs[1])};

    SynthesisOptions options;
    options.allow_role_swap = false;
    Protocol protocol = synthesize(code[0], code[1], options);
    VerificationReport report = success_probability(code[0], code[1], protocol);
    const double error = 1.0 - report.success_prob;
    return EnvCode{std::move(inputs), std::move(code), std::move(protocol), std::move(report), error};
}

}  // namespace loccflat
