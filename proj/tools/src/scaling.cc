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

#include "loccflat_tools/scaling.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>

#include "loccflat/flatten.h"
#include "loccflat/synthesis.h"
#include "loccflat_tools/random.h"

namespace loccflat::scaling {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
std::int64_t time_ns(F &&f) {
    const auto start = Clock::now();
    f();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

// Keeps the optimizer from discarding benchmarked results.
volatile double sink = 0;

}  // namespace

std::optional<BenchOp> parse_op(const std::string &name) {
    if (name == "flatten") return BenchOp::kFlatten;
    if (name == "overlap") return BenchOp::kOverlap;
    if (name == "synthesize") return BenchOp::kSynthesize;
    return std::nullopt;
}

std::string op_name(BenchOp op) {
    switch (op) {
        case BenchOp::kFlatten:
            return "flatten";
        case BenchOp::kOverlap:
            return "overlap";
        case BenchOp::kSynthesize:
            return "synthesize";
    }
    return "unknown";
}

RatioWindow ratio_window(BenchOp op) {
    switch (op) {
        case BenchOp::kFlatten:
            return {6.0, 12.0};
        case BenchOp::kOverlap:
            return {1.6, 2.6};
        case BenchOp::kSynthesize:
            return {10.0, 22.0};
    }
    return {0, 0};
}

BenchRecord measure(BenchOp op, std::size_t d, std::size_t repeats, std::uint64_t seed, std::size_t overlap_dim_a) {
    random::Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * d));
    std::function<void()> body;
    ComplexMatrix matrix(1, 1);
    std::optional<std::pair<StateVector, StateVector>> states;
    switch (op) {
        case BenchOp::kFlatten:
            matrix = random::trace_zero_matrix(rng, d);
            body = [&] { sink = sink + uflatgen(matrix).residual; };
            break;
        case BenchOp::kOverlap:
            states = random::orthogonal_pair(rng, {overlap_dim_a, d});
            body = [&] { sink = sink + overlap_matrix(states->first, states->second)(0, 0).real(); };
            break;
        case BenchOp::kSynthesize:
            states = random::orthogonal_pair(rng, {d, d});
            body = [&] { sink = sink + synthesize(states->first, states->second).outcome_probs_psi[0]; };
            break;
    }
    body();
    std::vector<std::int64_t> samples;
    for (std::size_t r = 0; r < repeats; r++) {
        samples.push_back(time_ns(body));
    }
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2), samples.end());
    return BenchRecord{d, samples[samples.size() / 2], repeats, op};
}

BenchResult run(const BenchConfig &config) {
    if (config.sizes.size() < 2) {
        throw std::invalid_argument("bench: at least two sizes are required");
    }
    if (config.repeats < kMinRepeats) {
        throw std::invalid_argument("bench: repeats must be at least " + std::to_string(kMinRepeats));
    }
    for (std::size_t k = 0; k < config.sizes.size(); k++) {
        if (config.sizes[k] < 2 || (k > 0 && config.sizes[k] != 2 * config.sizes[k - 1])) {
            throw std::invalid_argument("bench: sizes must start at 2 or more and double at every step");
        }
    }
    BenchResult result;
    result.window = ratio_window(config.op);
    for (auto d : config.sizes) {
        result.records.push_back(measure(config.op, d, config.repeats, config.seed, config.overlap_dim_a));
    }
    for (std::size_t k = 1; k < result.records.size(); k++) {
        const auto &prev = result.records[k - 1];
        const auto &next = result.records[k];
        result.ratios.push_back({prev.d, next.d,
                                 static_cast<double>(next.median_ns) / static_cast<double>(std::max<std::int64_t>(prev.median_ns, 1))});
    }
    const double last = result.ratios.back().ratio;
    result.pass = last >= result.window.lo && last <= result.window.hi;
    return result;
}

nlohmann::json record_to_json(const BenchRecord &r) {
    return {{"operation", op_name(r.operation)}, {"d", r.d}, {"median_ns", r.median_ns}, {"repeats", r.repeats}};
}

nlohmann::json ratio_to_json(const DoublingRatio &r, const RatioWindow &w) {
    return {{"from_d", r.from_d}, {"to_d", r.to_d}, {"ratio", r.ratio}, {"window", {w.lo, w.hi}},
            {"within_window", r.ratio >= w.lo && r.ratio <= w.hi}};
}

}  // namespace loccflat::scaling
