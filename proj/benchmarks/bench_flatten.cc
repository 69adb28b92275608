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

#include <benchmark/benchmark.h>

#include "loccflat/flatten.h"
#include "loccflat_tools/random.h"

namespace {

void BM_uflatgen(benchmark::State &state, loccflat::FlattenPath path) {
    const auto d = static_cast<std::size_t>(state.range(0));
    loccflat::random::Rng rng(d);
    const auto m = loccflat::random::trace_zero_matrix(rng, d);
    const loccflat::FlattenOptions options{path, {}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccflat::uflatgen(m, options));
    }
    state.SetComplexityN(state.range(0));
}

void BM_matmul(benchmark::State &state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    loccflat::random::Rng rng(d);
    const auto a = loccflat::random::gaussian_matrix(rng, d, d);
    const auto b = loccflat::random::gaussian_matrix(rng, d, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccflat::matmul(a, b));
    }
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_uflatgen, dense, loccflat::FlattenPath::kDense)
    ->RangeMultiplier(2)
    ->Range(8, 256)
    ->Unit(benchmark::kMicrosecond)
    ->Complexity();
BENCHMARK_CAPTURE(BM_uflatgen, block_sparse, loccflat::FlattenPath::kBlockSparse)
    ->RangeMultiplier(2)
    ->Range(8, 256)
    ->Unit(benchmark::kMicrosecond)
    ->Complexity();
BENCHMARK(BM_matmul)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMicrosecond)->Complexity(benchmark::oNCubed);
