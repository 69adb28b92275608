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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace loccflat::scaling {

enum class BenchOp { kFlatten, kOverlap, kSynthesize };

std::optional<BenchOp> parse_op(const std::string &name);
std::string op_name(BenchOp op);

struct BenchRecord {
    std::size_t d = 0;
    std::int64_t median_ns = 0;
    std::size_t repeats = 0;
    BenchOp operation = BenchOp::kFlatten;
};

/// Accepted window for median(2d) / median(d).
struct RatioWindow {
    double lo;
    double hi;
};

/// flatten [6, 12], overlap [1.6, 2.6], synthesize [10, 22].
RatioWindow ratio_window(BenchOp op);

struct DoublingRatio {
    std::size_t from_d = 0;
    std::size_t to_d = 0;
    double ratio = 0;
};

struct BenchConfig {
    BenchOp op = BenchOp::kFlatten;
    /// Ascending sizes, each twice the previous one. For overlap this is d_B.
    std::vector<std::size_t> sizes;
    std::size_t repeats = 5;
    std::uint64_t seed = 1;
    /// Fixed d_A for the overlap benchmark.
    std::size_t overlap_dim_a = 32;
};

struct BenchResult {
    std::vector<BenchRecord> records;
    std::vector<DoublingRatio> ratios;
    RatioWindow window{};
    /// The largest doubling step lies inside the window.
    bool pass = false;
};

inline constexpr std::size_t kMinRepeats = 5;

/// One timing point: a warmup run, then the median over `repeats` runs.
BenchRecord measure(BenchOp op, std::size_t d, std::size_t repeats, std::uint64_t seed, std::size_t overlap_dim_a);

/// Throws std::invalid_argument for fewer than two sizes, sizes that do not
/// double, or repeats below kMinRepeats.
BenchResult run(const BenchConfig &config);

nlohmann::json record_to_json(const BenchRecord &r);
nlohmann::json ratio_to_json(const DoublingRatio &r, const RatioWindow &w);

}  // namespace loccflat::scaling
