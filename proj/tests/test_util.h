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

// Reference oracles for the test suites. Everything here is written from the
// definitions with plain loops and never calls the library routine it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "loccflat/dense.h"
#include "loccflat/synthesis.h"

namespace loccflat::testing {

inline double cabs_diff(Complex a, Complex b) { return std::abs(a - b); }

/// Textbook triple loop with std::complex arithmetic.
inline ComplexMatrix naive_matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < b.cols(); j++) {
            Complex acc = 0;
            for (std::size_t k = 0; k < a.cols(); k++) {
                acc += a(i, k) * b(k, j);
            }
            c(i, j) = acc;
        }
    }
    return c;
}

inline ComplexMatrix naive_adjoint(const ComplexMatrix &a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            r(j, i) = std::conj(a(i, j));
        }
    }
    return r;
}

inline ComplexMatrix naive_kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            for (std::size_t k = 0; k < b.rows(); k++) {
                for (std::size_t l = 0; l < b.cols(); l++) {
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return r;
}

inline CVector naive_matvec(const ComplexMatrix &a, const CVector &x) {
    CVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            y[i] += a(i, j) * x[j];
        }
    }
    return y;
}

inline double naive_frobenius(const ComplexMatrix &a) {
    double acc = 0;
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            acc += std::norm(a(i, j));
        }
    }
    return std::sqrt(acc);
}

inline Complex naive_trace(const ComplexMatrix &a) {
    Complex t = 0;
    for (std::size_t k = 0; k < a.rows(); k++) {
        t += a(k, k);
    }
    return t;
}

inline double max_entry_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

/// ||U^* U - I||_F via the naive product.
inline double naive_unitarity_defect(const ComplexMatrix &u) {
    ComplexMatrix g = naive_matmul(naive_adjoint(u), u);
    for (std::size_t k = 0; k < g.rows(); k++) {
        g(k, k) -= 1.0;
    }
    return naive_frobenius(g);
}

/// Zero-pads m to n x n and returns U M U^* by the naive product.
inline ComplexMatrix naive_conjugate_padded(const ComplexMatrix &u, const ComplexMatrix &m) {
    ComplexMatrix padded(u.rows(), u.rows());
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            padded(i, j) = m(i, j);
        }
    }
    return naive_matmul(naive_matmul(u, padded), naive_adjoint(u));
}

/// Slice of a bipartite amplitude vector belonging to |i>_A: entries i*d_B .. i*d_B + d_B - 1.
inline CVector slice(const StateVector &s, std::size_t i) {
    const std::size_t db = s.dims()[1];
    CVector out(db);
    for (std::size_t j = 0; j < db; j++) {
        out[j] = s[i * db + j];
    }
    return out;
}

inline Complex naive_inner(const CVector &x, const CVector &y) {
    Complex acc = 0;
    for (std::size_t k = 0; k < x.size(); k++) {
        acc += std::conj(x[k]) * y[k];
    }
    return acc;
}

inline double naive_norm(const CVector &x) { return std::sqrt(std::real(naive_inner(x, x))); }

/// Minimum cardinality of an outcome subset keeping >= 1 - epsilon under both
/// distributions, by enumerating every subset (n <= 20). Uses the same
/// 1e-12 rounding slack as the library.
inline std::size_t exhaustive_min_subset(const std::vector<double> &p, const std::vector<double> &q, double epsilon) {
    const std::size_t n = p.size();
    const double target = 1.0 - epsilon;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask++) {
        double sp = 0;
        double sq = 0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; i++) {
            if (mask & (std::uint64_t{1} << i)) {
                sp += p[i];
                sq += q[i];
                count++;
            }
        }
        if (sp + 1e-12 >= target && sq + 1e-12 >= target) {
            best = std::min(best, count);
        }
    }
    return best;
}

/// Protocol stub carrying only outcome tables, for truncation tests.
inline Protocol protocol_with_probs(std::vector<double> psi, std::vector<double> phi) {
    Protocol p;
    p.padded_dim_a = psi.size();
    p.original_dim_a = psi.size();
    p.dim_b = 1;
    p.outcome_probs_psi = std::move(psi);
    p.outcome_probs_phi = std::move(phi);
    return p;
}


/// Hand Born-rule evaluation of a bipartite protocol: for every outcome,
/// contract Alice's vector against the padded amplitude slices, then score
/// Bob's click/no-click decision. Returns the uniform-prior success.
inline double born_success(const StateVector &psi_in, const StateVector &phi_in, const Protocol &p,
                           const std::vector<bool> *kept = nullptr) {
    StateVector psi = psi_in, phi = phi_in;
    if (p.measuring_party == MeasuringParty::kSecond) {
        psi = swap_parties(psi);
        phi = swap_parties(phi);
    }
    const std::size_t da = psi.dims()[0];
    const std::size_t db = psi.dims()[1];
    double correct_psi = 0;
    double correct_phi = 0;
    for (std::size_t i = 0; i < p.alice_vectors.size(); i++) {
        if (kept && !(*kept)[i]) continue;
        const CVector &a = p.alice_vectors[i];
        CVector cp(db), cf(db);
        for (std::size_t k = 0; k < da; k++) {
            for (std::size_t j = 0; j < db; j++) {
                cp[j] += std::conj(a[k]) * psi[k * db + j];
                cf[j] += std::conj(a[k]) * phi[k * db + j];
            }
        }
        const double nf = std::real(naive_inner(cf, cf));
        if (!p.bob_projectors[i]) {
            correct_phi += nf;
            continue;
        }
        const CVector &b = *p.bob_projectors[i];
        const double bb = std::real(naive_inner(b, b));
        correct_psi += std::norm(naive_inner(b, cp)) / bb;
        correct_phi += nf - std::norm(naive_inner(b, cf)) / bb;
    }
    return 0.5 * (correct_psi + correct_phi);
}

namespace detail {

// Masses (psi correct, phi correct) collected below `node` for unnormalized
// states on the parties node.party .. end.
inline std::pair<double, double> tree_masses(const MultipartyProtocol &t, std::size_t node, const CVector &psi,
                                             const CVector &phi) {
    const ProtocolNode &n = t.nodes[node];
    const std::size_t da = t.dims[n.party];
    std::size_t rest = 1;
    for (std::size_t k = n.party + 1; k < t.dims.size(); k++) rest *= t.dims[k];
    double cpsi = 0, cphi = 0;
    for (std::size_t i = 0; i < n.protocol.alice_vectors.size(); i++) {
        const CVector &a = n.protocol.alice_vectors[i];
        CVector sp(rest), sf(rest);
        for (std::size_t k = 0; k < da; k++) {
            for (std::size_t j = 0; j < rest; j++) {
                sp[j] += std::conj(a[k]) * psi[k * rest + j];
                sf[j] += std::conj(a[k]) * phi[k * rest + j];
            }
        }
        const double np = std::real(naive_inner(sp, sp));
        const double nf = std::real(naive_inner(sf, sf));
        if (n.is_leaf) {
            const auto &b = n.protocol.bob_projectors[i];
            if (!b) {
                cphi += nf;
            } else {
                const double bb = std::real(naive_inner(*b, *b));
                cpsi += std::norm(naive_inner(*b, sp)) / bb;
                cphi += nf - std::norm(naive_inner(*b, sf)) / bb;
            }
        } else if (n.branches[i].child) {
            auto [x, y] = tree_masses(t, *n.branches[i].child, sp, sf);
            cpsi += x;
            cphi += y;
        } else if (n.branches[i].guess_psi) {
            cpsi += np;
        } else {
            cphi += nf;
        }
    }
    return {cpsi, cphi};
}

}  // namespace detail

/// Born-rule enumeration over the full multiparty protocol tree.
inline double born_success(const StateVector &psi, const StateVector &phi, const MultipartyProtocol &t) {
    CVector a(psi.amplitudes().begin(), psi.amplitudes().end());
    CVector b(phi.amplitudes().begin(), phi.amplitudes().end());
    auto [x, y] = detail::tree_masses(t, 0, a, b);
    return 0.5 * (x + y);
}

}  // namespace loccflat::testing
