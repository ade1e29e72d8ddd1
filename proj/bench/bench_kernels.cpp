/* 
* Copyright (C) 2026 The idesecir authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/

#include "idesecir/config.h"
#include "idesecir/convolution.h"
#include "idesecir/experiments.h"
#include "idesecir/ide_solver.h"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace idesecir;

namespace
{

std::vector<double> decaying(std::size_t n, double rate)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = std::exp(-rate * static_cast<double>(i));
    }
    return v;
}

template <kernels::Backend B>
void BM_convolve(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    auto weights = decaying(n, 1e-4);
    auto series  = decaying(n, 1e-5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::convolve(B, weights, series, n - 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

IdeModel equilibrium_model(kernels::Backend backend)
{
    auto cfg = load_run_config(std::string(IDESECIR_SOURCE_DIR) + "/configs/simulate_ide_equilibrium.json");
    auto p   = validate_parameters(parse_model_parameters(cfg.document.at("parameters")));
    const double dt = cfg.document.at("dt").get<double>();
    auto st = equilibrium_initial_state(p, dt, 4000.0, 9500.0);
    return IdeModel(p, std::move(st.history), st.compartments, {backend, false});
}

/// One simulated day at dt = 0.01 on the full truncation window.
template <kernels::Backend B>
void BM_simulate_day(benchmark::State& state)
{
    auto model = equilibrium_model(B);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(model, 1.0));
    }
}

} // namespace

BENCHMARK(BM_convolve<kernels::Backend::Reference>)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_convolve<kernels::Backend::Parallel>)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_simulate_day<kernels::Backend::Reference>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simulate_day<kernels::Backend::Parallel>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
