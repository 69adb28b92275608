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

#include "loccflat/simulator.h"
#include "loccflat/synthesis.h"
#include "loccflat_tools/random.h"

namespace {

void BM_overlap_matrix(benchmark::State &state) {
    const auto db = static_cast<std::size_t>(state.range(0));
    loccflat::random::Rng rng(db);
    const auto [psi, phi] = loccflat::random::orthogonal_pair(rng, {32, db});
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccflat::overlap_matrix(psi, phi));
    }
    state.SetComplexityN(state.range(0));
}

void BM_synthesize(benchmark::State &state, loccflat::ConditionalStatePath path) {
    const auto d = static_cast<std::size_t>(state.range(0));
    loccflat::random::Rng rng(d);
    const auto [psi, phi] = loccflat::random::orthogonal_pair(rng, {d, d});
    loccflat::SynthesisOptions options;
    options.conditional_path = path;
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccflat::synthesize(psi, phi, options));
    }
    state.SetComplexityN(state.range(0));
}

void BM_success_probability(benchmark::State &state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    loccflat::random::Rng rng(d);
    const auto [psi, phi] = loccflat::random::orthogonal_pair(rng, {d, d});
    const auto protocol = loccflat::synthesize(psi, phi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(loccflat::success_probability(psi, phi, protocol));
    }
}

}  // namespace

BENCHMARK(BM_overlap_matrix)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMicrosecond)->Complexity(benchmark::oN);
BENCHMARK_CAPTURE(BM_synthesize, dense_kronecker, loccflat::ConditionalStatePath::kDenseKronecker)
    ->RangeMultiplier(2)
    ->Range(4, 64)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_synthesize, direct, loccflat::ConditionalStatePath::kDirect)
    ->RangeMultiplier(2)
    ->Range(4, 64)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_success_probability)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);
