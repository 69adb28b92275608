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

#include "loccflat/simulator.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "loccflat/errors.h"

namespace loccflat {

namespace {

using Clock = std::chrono::steady_clock;

// Amplitudes of the receiver given the measuring factor collapsed onto |a>:
// out[j] = sum_k conj(a_k) s[k * db + j].
CVector collapse(std::span<const Complex> s, std::span<const Complex> a, std::size_t db) {
    CVector out(db);
    for (std::size_t k = 0; k < a.size(); k++) {
        for (std::size_t j = 0; j < db; j++) {
            out[j] += std::conj(a[k]) * s[k * db + j];
        }
    }
    return out;
}

double probability(std::span<const Complex> v) {
    double acc = 0;
    for (const auto &z : v) {
        acc += std::norm(z);
    }
    return acc;
}

// Squared overlap of v with the unit vector along b.
double click_mass(std::span<const Complex> b, std::span<const Complex> v) {
    const double bn = norm2(b);
    return bn > 0 ? std::norm(inner(b, v)) / (bn * bn) : 0.0;
}

double gram_residual(const std::vector<CVector> &vs) {
    double acc = 0;
    for (std::size_t i = 0; i < vs.size(); i++) {
        for (std::size_t j = 0; j < vs.size(); j++) {
            const Complex g = inner(vs[i], vs[j]) - (i == j ? 1.0 : 0.0);
            acc += std::norm(g);
        }
    }
    return std::sqrt(acc);
}

void check_protocol_shape(const Protocol &p) {
    if (p.alice_vectors.size() != p.padded_dim_a || p.bob_projectors.size() != p.padded_dim_a ||
        p.original_dim_a > p.padded_dim_a || p.dim_b == 0) {
        throw DimensionError("protocol tables do not match its padded dimension");
    }
    for (const auto &a : p.alice_vectors) {
        if (a.size() != p.padded_dim_a) {
            throw DimensionError("alice vector has wrong length");
        }
    }
    for (const auto &b : p.bob_projectors) {
        if (b && b->size() != p.dim_b) {
            throw DimensionError("bob projector has wrong length");
        }
    }
}

// State amplitudes reoriented so the measuring factor comes first, padded.
CVector oriented_amplitudes(const StateVector &s, const Protocol &p) {
    if (s.num_factors() != 2) {
        throw DimensionError("protocol expects bipartite states");
    }
    const StateVector o = p.measuring_party == MeasuringParty::kSecond ? swap_parties(s) : s;
    if (o.dims()[0] != p.original_dim_a || o.dims()[1] != p.dim_b) {
        throw DimensionError("state dims [" + std::to_string(s.dims()[0]) + ", " + std::to_string(s.dims()[1]) +
                             "] do not match the protocol");
    }
    CVector amps(p.padded_dim_a * p.dim_b);
    std::copy(o.amplitudes().begin(), o.amplitudes().end(), amps.begin());
    return amps;
}

struct Tally {
    double correct_psi = 0;
    double correct_phi = 0;
    double orthogonality = 0;
    double measurement = 0;
};

void evaluate_node(const MultipartyProtocol &tree, std::size_t node_index, const CVector &psi, const CVector &phi,
                   Tally &tally, std::vector<OutcomeSuccess> *root_outcomes) {
    const ProtocolNode &node = tree.nodes.at(node_index);
    const Protocol &p = node.protocol;
    check_protocol_shape(p);
    const std::size_t local = tree.dims.at(node.party);
    std::size_t rest = 1;
    for (std::size_t k = node.party + 1; k < tree.dims.size(); k++) {
        rest *= tree.dims[k];
    }
    if (p.original_dim_a != local || p.dim_b != rest || psi.size() != local * rest || node.branches.size() != p.padded_dim_a) {
        throw DimensionError("multiparty node does not match the party dimensions");
    }
    CVector psi_pad(p.padded_dim_a * rest);
    CVector phi_pad(p.padded_dim_a * rest);
    std::copy(psi.begin(), psi.end(), psi_pad.begin());
    std::copy(phi.begin(), phi.end(), phi_pad.begin());
    tally.measurement = std::max(tally.measurement, gram_residual(p.alice_vectors));

    for (std::size_t i = 0; i < p.padded_dim_a; i++) {
        const CVector cpsi = collapse(psi_pad, p.alice_vectors[i], rest);
        const CVector cphi = collapse(phi_pad, p.alice_vectors[i], rest);
        const double before_psi = tally.correct_psi;
        const double before_phi = tally.correct_phi;
        if (node.is_leaf) {
            tally.orthogonality = std::max(tally.orthogonality, std::abs(inner(cphi, cpsi)));
            if (p.bob_projectors[i]) {
                tally.correct_psi += click_mass(*p.bob_projectors[i], cpsi);
                tally.correct_phi += probability(cphi) - click_mass(*p.bob_projectors[i], cphi);
            } else {
                tally.correct_phi += probability(cphi);
            }
        } else if (node.branches[i].child) {
            evaluate_node(tree, *node.branches[i].child, cpsi, cphi, tally, nullptr);
        } else if (node.branches[i].guess_psi) {
            tally.correct_psi += probability(cpsi);
        } else {
            tally.correct_phi += probability(cphi);
        }
        if (root_outcomes) {
            const double prob = 0.5 * (probability(cpsi) + probability(cphi));
            const double gained = 0.5 * ((tally.correct_psi - before_psi) + (tally.correct_phi - before_phi));
            root_outcomes->push_back({prob, prob > 0 ? gained / prob : 1.0});
        }
    }
}

}  // namespace

VerificationReport success_probability(const StateVector &psi, const StateVector &phi, const Protocol &p,
                                       const TruncatedMessagePlan *plan) {
    const auto start = Clock::now();
    check_protocol_shape(p);
    const CVector psi_amps = oriented_amplitudes(psi, p);
    const CVector phi_amps = oriented_amplitudes(phi, p);

    std::vector<bool> kept(p.padded_dim_a, plan == nullptr);
    if (plan) {
        for (auto i : plan->kept_outcomes) {
            if (i >= p.padded_dim_a) {
                throw DimensionError("truncation plan refers to a missing outcome");
            }
            kept[i] = true;
        }
    }

    VerificationReport report;
    double correct = 0;
    for (std::size_t i = 0; i < p.padded_dim_a; i++) {
        const CVector cpsi = collapse(psi_amps, p.alice_vectors[i], p.dim_b);
        const CVector cphi = collapse(phi_amps, p.alice_vectors[i], p.dim_b);
        const double prob_psi = probability(cpsi);
        const double prob_phi = probability(cphi);
        report.max_orthogonality_residual = std::max(report.max_orthogonality_residual, std::abs(inner(cphi, cpsi)));

        double mass = 0;
        if (kept[i]) {
            if (p.bob_projectors[i]) {
                mass = click_mass(*p.bob_projectors[i], cpsi) + prob_phi - click_mass(*p.bob_projectors[i], cphi);
            } else {
                mass = prob_phi;
            }
        }
        const double prob = 0.5 * (prob_psi + prob_phi);
        correct += 0.5 * mass;
        report.per_outcome_success.push_back({prob, prob > 0 ? 0.5 * mass / prob : 1.0});
    }
    report.measurement_residual = gram_residual(p.alice_vectors);
    report.valid_measurement = report.measurement_residual <= kZeroTol * static_cast<double>(p.padded_dim_a);
    report.success_prob = std::clamp(correct, 0.0, 1.0);
    report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return report;
}

VerificationReport success_probability(const StateVector &psi, const StateVector &phi,
                                       const MultipartyProtocol &p) {
    const auto start = Clock::now();
    if (psi.dims() != p.dims || phi.dims() != p.dims || p.nodes.empty()) {
        throw DimensionError("states do not match the multiparty protocol");
    }
    Tally tally;
    VerificationReport report;
    evaluate_node(p, 0, CVector(psi.amplitudes().begin(), psi.amplitudes().end()),
                  CVector(phi.amplitudes().begin(), phi.amplitudes().end()), tally, &report.per_outcome_success);
    report.success_prob = std::clamp(0.5 * (tally.correct_psi + tally.correct_phi), 0.0, 1.0);
    report.max_orthogonality_residual = tally.orthogonality;
    report.measurement_residual = tally.measurement;
    report.valid_measurement = tally.measurement <= kZeroTol * static_cast<double>(p.nodes[0].protocol.padded_dim_a);
    report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return report;
}

double sample_run(const StateVector &state, Hypothesis truth, const Protocol &p, std::uint64_t seed,
                  std::size_t shots) {
    if (shots == 0) {
        throw DomainError("sample_run: shots must be positive");
    }
    check_protocol_shape(p);
    const CVector amps = oriented_amplitudes(state, p);

    std::vector<CVector> conditionals;
    std::vector<double> cumulative;
    double acc = 0;
    for (const auto &a : p.alice_vectors) {
        conditionals.push_back(collapse(amps, a, p.dim_b));
        acc += probability(conditionals.back());
        cumulative.push_back(acc);
    }
    // Probability that Bob's projector clicks, per outcome.
    std::vector<double> click(p.padded_dim_a, 0.0);
    for (std::size_t i = 0; i < p.padded_dim_a; i++) {
        const double mass = probability(conditionals[i]);
        if (p.bob_projectors[i] && mass > 0) {
            click[i] = click_mass(*p.bob_projectors[i], conditionals[i]) / mass;
        }
    }

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::size_t successes = 0;
    for (std::size_t shot = 0; shot < shots; shot++) {
        const double u = uniform() * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t outcome =
            std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), p.padded_dim_a - 1);
        const bool says_psi = uniform() < click[outcome];
        if (says_psi == (truth == Hypothesis::kPsi)) {
            successes++;
        }
    }
    return static_cast<double>(successes) / static_cast<double>(shots);
}

}  // namespace loccflat
