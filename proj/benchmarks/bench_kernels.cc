// Copyright 2026 The mixsspt Authors
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

#include <random>

#include "benchmark/benchmark.h"
#include "mixsspt/fidelity.h"
#include "mixsspt/negativity.h"
#include "mixsspt/statmech.h"

using namespace mixsspt;

static void BM_sample_syndrome(benchmark::State &state) {
    size_t two_n = static_cast<size_t>(state.range(0));
    std::vector<double> rates(two_n, 0.3);
    std::mt19937_64 rng(1);
    SyndromeSample s;
    for (auto _ : state) {
        sample_syndrome(rates, true, rng, s);
        benchmark::DoNotOptimize(s.log_pi);
    }
}
BENCHMARK(BM_sample_syndrome)->Arg(32)->Arg(64)->Arg(1024);

static void BM_chain_kernel_numerator(benchmark::State &state) {
    size_t two_n = static_cast<size_t>(state.range(0));
    ChainKernel kernel(ChainModel::x_noise(two_n, 0.2));
    std::vector<double> rates(two_n, 0.45);
    std::mt19937_64 rng(2);
    SyndromeSample s;
    sample_syndrome(rates, true, rng, s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel.log_abs_numerator(s.subset));
    }
}
BENCHMARK(BM_chain_kernel_numerator)->Arg(32)->Arg(64)->Arg(1024);

static void BM_fc_1d_exact(benchmark::State &state) {
    size_t n = static_cast<size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fc_1d_exact(n, 0.25, n).log_value);
    }
}
BENCHMARK(BM_fc_1d_exact)->Arg(64)->Arg(1024);
BENCHMARK_MAIN();
