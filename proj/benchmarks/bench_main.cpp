// Copyright 2026 The uctrl Authors
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

#include "uctrl/constructions.hpp"
#include "uctrl/oracle_model.hpp"
#include "uctrl/topology.hpp"

namespace {

using namespace uctrl;

void BM_DongEval(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const auto alg = dong_cUd(d);
    const CMatrix u = haar_unitary(d, 1);
    for (auto _ : state) benchmark::DoNotOptimize(eval(alg, u));
}
BENCHMARK(BM_DongEval)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_DongCheckExact(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const auto alg = dong_cUd(d);
    const auto task = tasks::controlled_power(d, d);
    const CMatrix u = haar_unitary(d, 1);
    for (auto _ : state) benchmark::DoNotOptimize(check_exact(alg, task, u));
}
BENCHMARK(BM_DongCheckExact)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SymDet(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const CMatrix m = haar_unitary(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(sym_det(m));
}
BENCHMARK(BM_SymDet)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_DichotomyProbe(benchmark::State &state) {
    const auto alg = dong_cUd(2);
    for (auto _ : state) benchmark::DoNotOptimize(dichotomy_probe(alg, 2, 2, 256));
}
BENCHMARK(BM_DichotomyProbe)->Unit(benchmark::kMillisecond);

void BM_BuScan(benchmark::State &state) {
    const auto alg = kitaev_cswap(2);
    const PhaseFunction h = [&alg](const CMatrix &u) { return extract_h(alg, u, 1); };
    const SphereGrid grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bu_scan(h, 2, grid));
}
BENCHMARK(BM_BuScan)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
