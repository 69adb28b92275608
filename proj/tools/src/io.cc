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

#include "loccflat_tools/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "loccflat/errors.h"
#include "loccflat/tolerances.h"

namespace loccflat::io {

namespace {

const json &field(const json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) {
        throw ParseError(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

std::size_t positive_size(const json &j, const char *name) {
    const json &v = field(j, name);
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        throw ParseError(std::string("field '") + name + "' must be a positive integer");
    }
    return v.get<std::size_t>();
}

void check_schema(const json &j) {
    const json &v = field(j, "schema_version");
    if (!v.is_string() || v.get<std::string>().rfind("1.", 0) != 0) {
        throw ParseError("unsupported schema_version");
    }
}

CVector complex_list(const json &j, const char *what) {
    if (!j.is_array()) {
        throw ParseError(std::string(what) + " must be an array of [re, im] pairs");
    }
    CVector out;
    out.reserve(j.size());
    for (const auto &z : j) {
        out.push_back(complex_from_json(z));
    }
    return out;
}

json complex_list_to_json(std::span<const Complex> xs) {
    json arr = json::array();
    for (const auto &z : xs) {
        arr.push_back(complex_to_json(z));
    }
    return arr;
}

std::vector<double> real_list(const json &j, const char *what) {
    if (!j.is_array()) {
        throw ParseError(std::string(what) + " must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto &x : j) {
        if (!x.is_number()) {
            throw ParseError(std::string(what) + " must be an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

// Library shape and domain errors inside a file are reported as parse errors.
template <typename F>
auto parsing(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const NotNormalized &) {
        throw;
    } catch (const DimensionError &e) {
        throw ParseError(e.what());
    } catch (const DomainError &e) {
        throw ParseError(e.what());
    } catch (const json::exception &e) {
        throw ParseError(e.what());
    }
}

}  // namespace

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path &path, const json &j) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << j.dump(2) << "\n";
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("complex numbers are [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json state_to_json(const StateVector &s) {
    return json{{"schema_version", kSchemaVersion}, {"dims", s.dims()}, {"amplitudes", complex_list_to_json(s.amplitudes())}};
}

StateVector state_from_json(const json &j) {
    return parsing([&] {
        check_schema(j);
        const json &dims_json = field(j, "dims");
        if (!dims_json.is_array() || dims_json.empty()) {
            throw ParseError("dims must be a non-empty array");
        }
        std::vector<std::size_t> dims;
        for (const auto &d : dims_json) {
            if (!d.is_number_integer() || d.get<long long>() <= 0) {
                throw ParseError("dims must be positive integers");
            }
            dims.push_back(d.get<std::size_t>());
        }
        StateVector s(std::move(dims), complex_list(field(j, "amplitudes"), "amplitudes"));
        if (!s.is_normalized(kNormTol)) {
            throw NotNormalized("state has norm " + std::to_string(s.norm()));
        }
        return s;
    });
}

json matrix_to_json(const ComplexMatrix &m) {
    return json{{"schema_version", kSchemaVersion},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", complex_list_to_json(m.entries())}};
}

ComplexMatrix matrix_from_json(const json &j) {
    return parsing([&] {
        check_schema(j);
        return ComplexMatrix(positive_size(j, "rows"), positive_size(j, "cols"),
                             complex_list(field(j, "entries"), "entries"));
    });
}

json channel_to_json(const KrausChannel &ch) {
    json kraus = json::array();
    for (const auto &k : ch.kraus) {
        kraus.push_back(complex_list_to_json(k.entries()));
    }
    return json{{"schema_version", kSchemaVersion},
                {"input_dim", ch.input_dim},
                {"output_dim", ch.output_dim},
                {"kraus", kraus}};
}

KrausChannel channel_from_json(const json &j) {
    return parsing([&] {
        check_schema(j);
        KrausChannel ch;
        ch.input_dim = positive_size(j, "input_dim");
        ch.output_dim = positive_size(j, "output_dim");
        const json &kraus = field(j, "kraus");
        if (!kraus.is_array() || kraus.empty()) {
            throw ParseError("kraus must be a non-empty array");
        }
        for (const auto &k : kraus) {
            ch.kraus.emplace_back(ch.output_dim, ch.input_dim, complex_list(k, "kraus operator"));
        }
        return ch;
    });
}

json plan_to_json(const TruncatedMessagePlan &plan) {
    return json{{"epsilon", plan.epsilon},
                {"kept_outcomes", plan.kept_outcomes},
                {"bits", plan.bits},
                {"retained_prob_psi", plan.retained_prob_psi},
                {"retained_prob_phi", plan.retained_prob_phi},
                {"minimality_certified", plan.minimality_certified}};
}

TruncatedMessagePlan plan_from_json(const json &j) {
    return parsing([&] {
        TruncatedMessagePlan plan;
        plan.epsilon = field(j, "epsilon").get<double>();
        plan.kept_outcomes = field(j, "kept_outcomes").get<std::vector<std::size_t>>();
        plan.bits = field(j, "bits").get<std::size_t>();
        plan.retained_prob_psi = field(j, "retained_prob_psi").get<double>();
        plan.retained_prob_phi = field(j, "retained_prob_phi").get<double>();
        plan.minimality_certified = j.value("minimality_certified", true);
        if (!(plan.epsilon > 0 && plan.epsilon <= 1) || plan.kept_outcomes.empty()) {
            throw ParseError("truncation plan is out of range");
        }
        return plan;
    });
}

json protocol_to_json(const Protocol &p, const TruncatedMessagePlan *plan) {
    json alice = json::array();
    for (const auto &a : p.alice_vectors) {
        alice.push_back(complex_list_to_json(a));
    }
    json bob = json::array();
    for (const auto &b : p.bob_projectors) {
        bob.push_back(b ? complex_list_to_json(*b) : json(nullptr));
    }
    json j{{"schema_version", kSchemaVersion},
           {"measuring_party", p.measuring_party == MeasuringParty::kFirst ? "first" : "second"},
           {"padded_dim_a", p.padded_dim_a},
           {"original_dim_a", p.original_dim_a},
           {"dim_b", p.dim_b},
           {"alice_vectors", alice},
           {"bob_projectors", bob},
           {"outcome_probs_psi", p.outcome_probs_psi},
           {"outcome_probs_phi", p.outcome_probs_phi},
           {"input_overlap", complex_to_json(p.input_overlap)},
           {"flattening_residual", p.flattening_residual},
           {"tolerances", {{"zero", p.tolerances.zero}, {"norm", p.tolerances.norm}, {"orth", p.tolerances.orth}}}};
    if (plan) {
        j["truncation"] = plan_to_json(*plan);
    }
    return j;
}

ProtocolFile protocol_from_json(const json &j) {
    return parsing([&] {
        check_schema(j);
        ProtocolFile file;
        Protocol &p = file.protocol;
        const std::string party = field(j, "measuring_party").get<std::string>();
        if (party != "first" && party != "second") {
            throw ParseError("measuring_party must be \"first\" or \"second\"");
        }
        p.measuring_party = party == "first" ? MeasuringParty::kFirst : MeasuringParty::kSecond;
        p.padded_dim_a = positive_size(j, "padded_dim_a");
        p.original_dim_a = positive_size(j, "original_dim_a");
        p.dim_b = positive_size(j, "dim_b");
        const json &alice = field(j, "alice_vectors");
        const json &bob = field(j, "bob_projectors");
        if (!alice.is_array() || !bob.is_array()) {
            throw ParseError("alice_vectors and bob_projectors must be arrays");
        }
        for (const auto &a : alice) {
            p.alice_vectors.push_back(complex_list(a, "alice vector"));
        }
        for (const auto &b : bob) {
            if (b.is_null()) {
                p.bob_projectors.emplace_back(std::nullopt);
            } else {
                p.bob_projectors.emplace_back(complex_list(b, "bob projector"));
            }
        }
        p.outcome_probs_psi = real_list(field(j, "outcome_probs_psi"), "outcome_probs_psi");
        p.outcome_probs_phi = real_list(field(j, "outcome_probs_phi"), "outcome_probs_phi");
        if (j.contains("input_overlap")) {
            p.input_overlap = complex_from_json(j.at("input_overlap"));
        }
        p.flattening_residual = j.value("flattening_residual", 0.0);
        if (j.contains("tolerances")) {
            const json &t = j.at("tolerances");
            p.tolerances = {t.value("zero", kZeroTol), t.value("norm", kNormTol), t.value("orth", kOrthTol)};
        }
        if (j.contains("truncation") && !j.at("truncation").is_null()) {
            file.truncation = plan_from_json(j.at("truncation"));
        }
        return file;
    });
}

json report_to_json(const VerificationReport &r) {
    json outcomes = json::array();
    for (const auto &o : r.per_outcome_success) {
        outcomes.push_back({{"probability", o.probability}, {"conditional_success", o.conditional_success}});
    }
    return json{{"success_prob", r.success_prob},
                {"per_outcome_success", outcomes},
                {"max_orthogonality_residual", r.max_orthogonality_residual},
                {"measurement_residual", r.measurement_residual},
                {"valid_measurement", r.valid_measurement},
                {"elapsed_ns", r.elapsed.count()},
                {"tolerances", {{"zero", r.tolerances.zero}, {"norm", r.tolerances.norm}, {"orth", r.tolerances.orth}}}};
}

json flattening_to_json(const FlatteningResult &r, double verified_residual) {
    return json{{"schema_version", kSchemaVersion},
                {"original_dim", r.original_dim},
                {"padded_dim", r.padded_dim},
                {"layers", r.layers},
                {"residual", r.residual},
                {"verified_residual", verified_residual},
                {"unitary", matrix_to_json(r.unitary)}};
}

json env_code_to_json(const EnvCode &code, const KrausChannel &ch) {
    return json{{"schema_version", kSchemaVersion},
                {"input_dim", ch.input_dim},
                {"dim_b", ch.output_dim},
                {"dim_e", ch.kraus.size()},
                {"encoder_states", {complex_list_to_json(code.encoder_states[0]), complex_list_to_json(code.encoder_states[1])}},
                {"code_states", {state_to_json(code.code_states[0]), state_to_json(code.code_states[1])}},
                {"protocol", protocol_to_json(code.protocol)},
                {"report", report_to_json(code.report)},
                {"error_prob", code.error_prob}};
}

}  // namespace loccflat::io
