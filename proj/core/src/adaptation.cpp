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
#include "dynopt/adaptation.hpp"

#include "dynopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace dynopt {

std::string_view to_string(AdaptationKind kind)
{
    switch (kind) {
    case AdaptationKind::partial_reinit:
        return "partial_reinit";
    case AdaptationKind::local_search_high_mutation:
        return "local_search_high_mutation";
    case AdaptationKind::hybrid:
        return "hybrid";
    }
    return "unknown";
}

AdaptationKind parse_adaptation_kind(std::string_view name)
{
    if (name == "partial_reinit") {
        return AdaptationKind::partial_reinit;
    }
    if (name == "local_search_high_mutation") {
        return AdaptationKind::local_search_high_mutation;
    }
    if (name == "hybrid") {
        return AdaptationKind::hybrid;
    }
    throw ConfigError("unknown adaptation strategy '" + std::string(name)
                      + "' (expected partial_reinit, local_search_high_mutation or hybrid)");
}

DEConfig default_local_search_config()
{
    DEConfig config;
    config.variant = DEVariant::best1bin;
    config.mutation = MutationFactor::dither(0.7, 1.2);
    config.crossover_rate = 0.9;
    return config;
}

void AdaptationStrategy::validate() const
{
    if (!(reinit_fraction > 0.0 && reinit_fraction <= 1.0)) {
        throw ConfigError("reinit_fraction must lie in (0, 1]");
    }
    local_search_config.validate();
    if (local_search_config.mutation.hi > 2.0) {
        throw ConfigError("local search dither bounds must lie within (0, 2]");
    }
    if (local_search_budget < 0) {
        throw ConfigError("local_search_budget must be >= 0");
    }
}

std::size_t reinit_component_count(double fraction, std::size_t dimension)
{
    const auto rounded = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(dimension) + 0.5));
    return std::clamp<std::size_t>(rounded, 1, dimension);
}

std::size_t partial_reinit(Population& pop, double fraction, const DynamicProblem& problem, Rng& rng)
{
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw ConfigError("reinit fraction must lie in (0, 1]");
    }
    const auto& bounds = problem.bounds();
    const std::size_t dimension = problem.dimension();
    const std::size_t count = reinit_component_count(fraction, dimension);
    std::vector<std::size_t> order(dimension);
    for (auto& member : pop.members) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Partial Fisher-Yates: the first 'count' slots become a uniform sample.
        for (std::size_t k = 0; k < count; ++k) {
            std::swap(order[k], order[k + rng.index(dimension - k)]);
        }
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t j = order[k];
            member[j] = rng.uniform(bounds.lower(j), bounds.upper(j));
        }
    }
    return refresh_fitness(pop, problem);
}

AdaptationOutcome local_search_burst(Population& pop, const DynamicProblem& problem, const AdaptationStrategy& strategy,
                                     Rng& rng, const DonorObserver& observer)
{
    strategy.validate();
    AdaptationOutcome outcome;
    outcome.strategy_used = AdaptationKind::local_search_high_mutation;
    outcome.fitness_before = pop.best_fitness();
    for (std::int64_t g = 0; g < strategy.local_search_budget; ++g) {
        outcome.evaluations_spent += step_generation(pop, problem, strategy.local_search_config, rng, observer).evaluations;
    }
    outcome.fitness_after = pop.best_fitness();
    return outcome;
}

AdaptationOutcome adapt(Population& pop, const ChangeEvent& event, const AdaptationStrategy& strategy,
                        const DynamicProblem& problem, Rng& rng, const DonorObserver& observer)
{
    strategy.validate();
    if (event.detected_at != problem.clock()) {
        throw ConfigError("adapt: stale change event from t=" + std::to_string(event.detected_at));
    }
    AdaptationOutcome outcome;
    outcome.strategy_used = strategy.kind;
    outcome.evaluations_spent = refresh_fitness(pop, problem, strategy.local_search_config.eval_threads);
    outcome.fitness_before = pop.best_fitness();

    switch (strategy.kind) {
    case AdaptationKind::partial_reinit:
        outcome.evaluations_spent += partial_reinit(pop, strategy.reinit_fraction, problem, rng);
        break;
    case AdaptationKind::local_search_high_mutation:
        outcome.evaluations_spent += local_search_burst(pop, problem, strategy, rng, observer).evaluations_spent;
        break;
    case AdaptationKind::hybrid:
        outcome.evaluations_spent += partial_reinit(pop, strategy.reinit_fraction, problem, rng);
        outcome.evaluations_spent += local_search_burst(pop, problem, strategy, rng, observer).evaluations_spent;
        break;
    default:
        throw ConfigError("adapt: unknown strategy kind");
    }
    outcome.fitness_after = pop.best_fitness();
    return outcome;
}

} // namespace dynopt
