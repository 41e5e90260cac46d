// Copyright 2026 The QTap Authors
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

#include <vector>

#include "qtap/detection.h"
#include "qtap/montecarlo.h"
#include "qtap/schemes.h"

namespace {

using namespace qtap;

void BM_three_way(benchmark::State &state) {
    double T = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scheme_three_way(T, 5.0, 1.0).metrics.total_transfer);
    }
}
BENCHMARK(BM_three_way);

void BM_single_tap(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(scheme_three_way_single_tap(0.3, 5.0, 1.0).total_transfer);
    }
}
BENCHMARK(BM_single_tap);

void BM_optimize_transmissivity(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_transmissivity(10.0).transfer_max);
    }
}
BENCHMARK(BM_optimize_transmissivity)->Unit(benchmark::kMillisecond);

void BM_conditional_variance(benchmark::State &state) {
    const ThreeWayCircuit tw = build_three_way(0.4, 3.0, 3.0, 1.0);
    const Observable c = observe(tw.c_out, 0.0);
    const std::vector<Observable> aux{observe(tw.a_out, 0.0), observe(tw.b_out, 0.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(conditional_variance(c, aux).variance);
    }
}
BENCHMARK(BM_conditional_variance);

void BM_mc_estimate(benchmark::State &state) {
    const SchemeCircuit circuit = build_three_way(0.4, 3.0, 3.0, 1.0).circuit;
    const std::vector<Observable> obs = circuit.observables();
    MCConfig cfg;
    cfg.samples = static_cast<uint64_t>(state.range(0));
    cfg.workers = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_estimate(obs, cfg).means);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_mc_estimate)->Arg(1 << 14)->Arg(1 << 18)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
