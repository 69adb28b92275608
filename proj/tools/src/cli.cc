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

#include "loccflat_tools/cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "loccflat/env_code.h"
#include "loccflat/errors.h"
#include "loccflat/flatten.h"
#include "loccflat/simulator.h"
#include "loccflat/synthesis.h"
#include "loccflat/tolerances.h"
#include "loccflat_tools/io.h"
#include "loccflat_tools/scaling.h"

namespace loccflat::cli {

namespace {

// Success below 1 - kSuccessTol counts as a failed perfect discrimination.
constexpr double kSuccessTol = 1e-9;

std::string fixed9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

void emit(const io::json &j, const std::string &out_path, std::ostream &out) {
    if (out_path.empty()) {
        out << j.dump(2) << "\n";
    } else {
        io::write_json_file(out_path, j);
    }
}

int cmd_synthesize(const std::string &psi_path, const std::string &phi_path, const std::string &out_path,
                   std::optional<double> epsilon, std::ostream &out, std::ostream &err) {
    const StateVector psi = io::state_from_json(io::read_json_file(psi_path));
    const StateVector phi = io::state_from_json(io::read_json_file(phi_path));
    if (psi.dims() != phi.dims() || psi.num_factors() != 2) {
        err << "error: states must be bipartite with identical dims\n";
        return kInputError;
    }
    Protocol protocol;
    try {
        protocol = synthesize(psi, phi);
    } catch (const NonOrthogonalInput &e) {
        err << "error: inputs are not orthogonal, |<phi|psi>| = " << e.overlap << "\n";
        return kPreconditionError;
    }
    std::optional<TruncatedMessagePlan> plan;
    if (epsilon) {
        plan = epsilon_truncate(protocol, *epsilon);
    }
    io::write_json_file(out_path, io::protocol_to_json(protocol, plan ? &*plan : nullptr));

    const VerificationReport report = success_probability(psi, phi, protocol);
    out << "success=" << fixed9(report.success_prob) << " outcomes=" << protocol.padded_dim_a
        << " measuring_party=" << (protocol.measuring_party == MeasuringParty::kFirst ? "first" : "second");
    if (plan) {
        const VerificationReport truncated = success_probability(psi, phi, protocol, &*plan);
        out << " epsilon=" << *epsilon << " kept=" << plan->kept_outcomes.size() << " bits=" << plan->bits
            << " truncated_success=" << fixed9(truncated.success_prob);
    }
    out << "\n";
    if (report.success_prob < 1.0 - kSuccessTol || !report.valid_measurement) {
        err << "error: synthesized protocol failed verification\n";
        return kVerificationFailed;
    }
    return kOk;
}

int cmd_verify(const std::string &psi_path, const std::string &phi_path, const std::string &protocol_path,
               std::ostream &out, std::ostream &err) {
    const StateVector psi = io::state_from_json(io::read_json_file(psi_path));
    const StateVector phi = io::state_from_json(io::read_json_file(phi_path));
    const io::ProtocolFile file = io::protocol_from_json(io::read_json_file(protocol_path));
    VerificationReport report;
    try {
        report = success_probability(psi, phi, file.protocol, file.truncation ? &*file.truncation : nullptr);
    } catch (const DimensionError &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    out << io::report_to_json(report).dump(2) << "\n";
    const double threshold = 1.0 - (file.truncation ? file.truncation->epsilon : 0.0) - kSuccessTol;
    if (report.success_prob < threshold || !report.valid_measurement) {
        err << "verification failed: success=" << fixed9(report.success_prob) << "\n";
        return kVerificationFailed;
    }
    return kOk;
}

int cmd_flatten(const std::string &matrix_path, const std::string &out_path, std::ostream &out, std::ostream &err) {
    const ComplexMatrix m = io::matrix_from_json(io::read_json_file(matrix_path));
    if (!m.is_square() || m.rows() < 2) {
        err << "error: flatten needs a square matrix of dimension at least 2\n";
        return kInputError;
    }
    const FlatteningResult result = uflatgen(m);
    const double verified = verify_flat(m, result);
    emit(io::flattening_to_json(result, verified), out_path, out);
    if (!out_path.empty()) {
        out << "residual=" << verified << " padded_dim=" << result.padded_dim << " layers=" << result.layers << "\n";
    }
    if (verified > kZeroTol * (1.0 + frobenius_norm(m))) {
        err << "error: flattening residual " << verified << " exceeds tolerance\n";
        return kVerificationFailed;
    }
    return kOk;
}

int cmd_envcode(const std::string &channel_path, const std::string &out_path, std::ostream &out, std::ostream &err) {
    const KrausChannel ch = io::channel_from_json(io::read_json_file(channel_path));
    if (ch.input_dim < 2) {
        err << "error: channel input dimension must exceed 1\n";
        return kPreconditionError;
    }
    ch.validate();
    const EnvCode code = build_env_code(ch);
    emit(io::env_code_to_json(code, ch), out_path, out);
    if (!out_path.empty()) {
        out << "error_prob=" << code.error_prob << " dim_e=" << ch.kraus.size() << " dim_b=" << ch.output_dim << "\n";
    }
    if (code.error_prob > kSuccessTol) {
        err << "error: environment-assisted code has error probability " << code.error_prob << "\n";
        return kVerificationFailed;
    }
    return kOk;
}

int cmd_bench(const std::string &op_name, const std::vector<std::size_t> &sizes, std::size_t repeats,
              std::uint64_t seed, std::size_t dim_a, std::ostream &out, std::ostream &err) {
    const auto op = scaling::parse_op(op_name);
    if (!op) {
        err << "error: unknown bench operation '" << op_name << "'\n";
        return kInputError;
    }
    scaling::BenchResult result;
    try {
        result = scaling::run({*op, sizes, repeats, seed, dim_a});
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    for (const auto &r : result.records) {
        out << scaling::record_to_json(r).dump() << "\n";
    }
    for (const auto &r : result.ratios) {
        out << scaling::ratio_to_json(r, result.window).dump() << "\n";
    }
    if (!result.pass) {
        err << "error: largest doubling ratio " << result.ratios.back().ratio << " outside [" << result.window.lo
            << ", " << result.window.hi << "]\n";
        return kVerificationFailed;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Synthesizes and verifies perfect one-way LOCC discrimination protocols", "loccflat"};
    app.require_subcommand(1);

    std::string psi_path, phi_path, protocol_path, matrix_path, channel_path, out_path;
    std::optional<double> epsilon;

    auto *synth = app.add_subcommand("synthesize", "Build the protocol for two orthogonal bipartite states");
    synth->add_option("psi", psi_path, "State file for psi")->required();
    synth->add_option("phi", phi_path, "State file for phi")->required();
    synth->add_option("--out", out_path, "Protocol output file")->required();
    synth->add_option("--epsilon", epsilon, "Attach the epsilon-truncated message plan");

    auto *verify = app.add_subcommand("verify", "Re-evaluate a protocol file against two states");
    verify->add_option("psi", psi_path)->required();
    verify->add_option("phi", phi_path)->required();
    verify->add_option("protocol", protocol_path)->required();

    auto *flatten = app.add_subcommand("flatten", "Find a unitary equalizing the diagonal of a matrix");
    flatten->add_option("matrix", matrix_path)->required();
    flatten->add_option("--out", out_path, "Output file (stdout when omitted)");

    auto *envcode = app.add_subcommand("envcode", "Build the environment-assisted one-bit code of a channel");
    envcode->add_option("channel", channel_path)->required();
    envcode->add_option("--out", out_path, "Output file (stdout when omitted)");

    std::string bench_op = "flatten";
    std::vector<std::size_t> sizes;
    std::size_t repeats = scaling::kMinRepeats;
    std::uint64_t seed = 20240601;
    std::size_t dim_a = 32;
    auto *bench = app.add_subcommand("bench", "Measure doubling ratios of the core operations");
    bench->add_option("--op", bench_op, "flatten | overlap | synthesize")->capture_default_str();
    bench->add_option("--d", sizes, "Comma-separated doubling sizes")->delimiter(',')->required();
    bench->add_option("--repeats", repeats, "Timed repeats per size")->capture_default_str();
    bench->add_option("--seed", seed, "Seed for the random inputs")->capture_default_str();
    bench->add_option("--da", dim_a, "Fixed d_A for the overlap benchmark")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kInputError;
    }

    try {
        if (*synth) return cmd_synthesize(psi_path, phi_path, out_path, epsilon, out, err);
        if (*verify) return cmd_verify(psi_path, phi_path, protocol_path, out, err);
        if (*flatten) return cmd_flatten(matrix_path, out_path, out, err);
        if (*envcode) return cmd_envcode(channel_path, out_path, out, err);
        if (*bench) return cmd_bench(bench_op, sizes, repeats, seed, dim_a, out, err);
    } catch (const io::ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const NotNormalized &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace loccflat::cli
