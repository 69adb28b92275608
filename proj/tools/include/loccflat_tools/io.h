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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "loccflat/env_code.h"
#include "loccflat/flatten.h"
#include "loccflat/simulator.h"
#include "loccflat/synthesis.h"

namespace loccflat::io {

inline constexpr const char *kSchemaVersion = "1.0";

/// Malformed input file: unreadable, not JSON, or missing/ill-typed fields.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using nlohmann::json;

json read_json_file(const std::filesystem::path &path);
void write_json_file(const std::filesystem::path &path, const json &j);

json complex_to_json(Complex z);
Complex complex_from_json(const json &j);

/// {"schema_version", "dims", "amplitudes": [[re, im], ...]}. Loading checks
/// the unit norm within kNormTol.
json state_to_json(const StateVector &s);
StateVector state_from_json(const json &j);

/// {"schema_version", "rows", "cols", "entries": [[re, im], ...]} row-major.
json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const json &j);

/// {"schema_version", "input_dim", "output_dim", "kraus": [[[re, im], ...], ...]},
/// each Kraus operator row-major output_dim x input_dim. Not validated for
/// trace preservation here.
json channel_to_json(const KrausChannel &ch);
KrausChannel channel_from_json(const json &j);

json plan_to_json(const TruncatedMessagePlan &plan);
TruncatedMessagePlan plan_from_json(const json &j);

struct ProtocolFile {
    Protocol protocol;
    std::optional<TruncatedMessagePlan> truncation;
};

json protocol_to_json(const Protocol &p, const TruncatedMessagePlan *plan = nullptr);
ProtocolFile protocol_from_json(const json &j);

json report_to_json(const VerificationReport &r);
json flattening_to_json(const FlatteningResult &r, double verified_residual);
json env_code_to_json(const EnvCode &code, const KrausChannel &ch);

}  // namespace loccflat::io
