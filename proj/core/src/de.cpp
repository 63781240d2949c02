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
#include "dynopt/de.hpp"

#include "dynopt/error.hpp"
#include "dynopt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dynopt {

std::string_view to_string(DEVariant variant)
{
    switch (variant) {
    case DEVariant::rand1bin:
        return "rand1bin";
    case DEVariant::best1bin:
        return "best1bin";
    }
    return "unknown";
}

DEVariant parse_de_variant(std::string_view name)
{
    if (name == "rand1bin") {
        return DEVariant::rand1bin;
    }
    if (name == "best1bin") {
        return DEVariant::best1bin;
    }
    throw ConfigError("unknown DE variant '" + std::string(name) + "' (expected rand1bin or best1bin)");
}

void DEConfig::validate() const
{
    if (population_size != 0 && population_size < 4) {
        throw ConfigError("population_size must be >= 4 (three donors plus the target)");
    }
    if (!(mutation.lo > 0.0) || !(mutation.lo <= mutation.hi) || !std::isfinite(mutation.hi)) {
        throw ConfigError("mutation factor requires 0 < lo <= hi");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
        throw ConfigError("crossover_rate must lie in [0, 1]");
    }
    if (max_generations < 1) {
        throw ConfigError("max_generations must be >= 1");
    }
}

std::size_t default_population_size(std::size_t dimension)
{
    return std::clamp<std::size_t>(10 * dimension, 4, 100);
}

std::size_t DEConfig::resolved_population_size(std::size_t dimension) const
{
    return population_size == 0 ? default_population_size(dimension) : population_size;
}

double Population::mean_fitness() const
{
    if (fitness.empty()) {
        return 0.0;
    }
    return std::accumulate(fitness.begin(), fitness.end(), 0.0) / static_cast<double>(fitness.size());
}

void Population::refresh_best()
{
    best_index = 0;
    for (std::size_t i = 1; i < fitness.size(); ++i) {
        if (fitness[i] < fitness[best_index]) {
            best_index = i;
        }
    }
}

Population init_population(const DynamicProblem& problem, const DEConfig& config, Rng& rng)
{
    config.validate();
    const auto& bounds = problem.bounds();
    const std::size_t n = config.resolved_population_size(problem.dimension());
    Population pop;
    pop.members.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        SolutionVector x(problem.dimension());
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] = rng.uniform(bounds.lower(j), bounds.upper(j));
        }
        pop.members.push_back(std::move(x));
    }
    pop.fitness.assign(n, 0.0);
    refresh_fitness(pop, problem, config.eval_threads);
    return pop;
}

Population init_population(const DynamicProblem& problem, const DEConfig& config, std::uint64_t seed)
{
    Rng rng(seed, Stream::init);
    return init_population(problem, config, rng);
}

std::size_t refresh_fitness(Population& pop, const DynamicProblem& problem, std::size_t threads)
{
    pop.fitness.resize(pop.members.size());
    const Iteration t = problem.clock();
    parallel_for(pop.members.size(), threads, [&](std::size_t i) { pop.fitness[i] = problem.evaluate(pop.members[i], t); });
    pop.refresh_best();
    return pop.members.size();
}

namespace {

std::size_t draw_excluding(Rng& rng, std::size_t n, std::initializer_list<std::size_t> excluded)
{
    for (;;) {
        const std::size_t r = rng.index(n);
        if (std::find(excluded.begin(), excluded.end(), r) == excluded.end()) {
            return r;
        }
    }
}

} // namespace

Donor mutate(const Population& pop, std::size_t target_index, const DEConfig& config, const BoxBounds& bounds, Rng& rng)
{
    const std::size_t n = pop.size();
    if (n < 4) {
        throw ConfigError("mutation needs a population of at least 4, got " + std::to_string(n));
    }
    Donor donor;
    const std::size_t r1 = draw_excluding(rng, n, {target_index});
    const std::size_t r2 = draw_excluding(rng, n, {target_index, r1});
    const std::size_t r3 = draw_excluding(rng, n, {target_index, r1, r2});
    donor.indices = {r1, r2, r3};
    donor.factor = config.mutation.dithered() ? rng.uniform(config.mutation.lo, config.mutation.hi) : config.mutation.lo;

    const SolutionVector& base = config.variant == DEVariant::best1bin ? pop.best() : pop.members[r1];
    const SolutionVector& a = pop.members[r2];
    const SolutionVector& b = pop.members[r3];
    SolutionVector v(base.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = base[j] + donor.factor * (a[j] - b[j]);
    }
    donor.vector = clamp_to_bounds(std::move(v), bounds);
    return donor;
}

SolutionVector crossover(const SolutionVector& target, const SolutionVector& donor, double crossover_rate, Rng& rng)
{
    if (target.size() != donor.size()) {
        throw DimensionError("crossover: target and donor lengths differ");
    }
    const std::size_t forced = rng.index(target.size());
    SolutionVector trial = target;
    for (std::size_t j = 0; j < trial.size(); ++j) {
        const double draw = rng.uniform01_upper_closed();
        if (draw <= crossover_rate || j == forced) {
            trial[j] = donor[j];
        }
    }
    return trial;
}

Selection select(const SolutionVector& target, double target_fitness, const SolutionVector& trial, double trial_fitness)
{
    if (!std::isfinite(target_fitness) || !std::isfinite(trial_fitness)) {
        throw EvaluationError("select: non-finite fitness");
    }
    if (trial_fitness <= target_fitness) {
        return {trial, trial_fitness, true};
    }
    return {target, target_fitness, false};
}

GenerationStats step_generation(Population& pop, const DynamicProblem& problem, const DEConfig& config, Rng& rng,
                                const DonorObserver& observer)
{
    const std::size_t n = pop.size();
    if (n < 4) {
        throw ConfigError("step_generation: population of at least 4 required");
    }
    std::vector<SolutionVector> trials;
    trials.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Donor donor = mutate(pop, i, config, problem.bounds(), rng);
        if (observer) {
            observer(i, donor);
        }
        trials.push_back(crossover(pop.members[i], donor.vector, config.crossover_rate, rng));
    }

    std::vector<double> trial_fitness(n);
    const Iteration t = problem.clock();
    parallel_for(n, config.eval_threads, [&](std::size_t i) { trial_fitness[i] = problem.evaluate(trials[i], t); });

    GenerationStats stats{n, 0};
    for (std::size_t i = 0; i < n; ++i) {
        Selection s = select(pop.members[i], pop.fitness[i], trials[i], trial_fitness[i]);
        if (s.replaced) {
            pop.members[i] = std::move(trials[i]);
            pop.fitness[i] = s.winner_fitness;
            ++stats.replacements;
        }
    }
    ++pop.generation;
    pop.refresh_best();
    return stats;
}

} // namespace dynopt
