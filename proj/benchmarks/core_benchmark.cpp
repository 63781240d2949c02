// Copyright 2026 The dynopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dynopt/baselines.hpp"
#include "dynopt/framework.hpp"

#include <benchmark/benchmark.h>

namespace dynopt {
namespace {

DynamicProblem bench_problem(std::size_t d)
{
    return make_moving_optimum_problem(d, BoxBounds::uniform(d, 0, 1), {200, 0.1, std::nullopt}, 1);
}

void BM_Evaluate(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto problem = bench_problem(d);
    const SolutionVector x(d, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(problem.evaluate(x, 0));
    }
}
BENCHMARK(BM_Evaluate)->Arg(2)->Arg(10)->Arg(100);

void BM_StepGeneration(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto problem = bench_problem(d);
    DEConfig config;
    config.eval_threads = static_cast<std::size_t>(state.range(1));
    auto pop = init_population(problem, config, 0);
    Rng rng(0, Stream::search);
    for (auto _ : state) {
        step_generation(pop, problem, config, rng);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pop.size()));
}
BENCHMARK(BM_StepGeneration)->Args({10, 1})->Args({10, 4})->Args({50, 1});

void BM_FrameworkRun(benchmark::State& state)
{
    FrameworkConfig config;
    config.strategy.kind = static_cast<AdaptationKind>(state.range(0));
    for (auto _ : state) {
        auto problem = bench_problem(10);
        benchmark::DoNotOptimize(run(problem, config));
    }
}
BENCHMARK(BM_FrameworkRun)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_BasinHop(benchmark::State& state)
{
    const auto problem = bench_problem(10);
    BasinConfig config;
    config.evaluation_budget = 100000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(basin_hop(problem, config, 0));
    }
}
BENCHMARK(BM_BasinHop)->Unit(benchmark::kMillisecond);

} // namespace
} // namespace dynopt

BENCHMARK_MAIN();
