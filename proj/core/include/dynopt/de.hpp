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
#ifndef DYNOPT_DE_HPP
#define DYNOPT_DE_HPP

#include "dynopt/dynamic_problem.hpp"
#include "dynopt/random.hpp"
#include "dynopt/solution.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace dynopt {

enum class DEVariant { rand1bin, best1bin };

std::string_view to_string(DEVariant variant);
DEVariant parse_de_variant(std::string_view name);

/// Scale applied to the difference vector. lo == hi means a fixed factor;
/// otherwise a fresh factor is drawn uniformly from [lo, hi] for every donor.
struct MutationFactor {
    double lo = 0.8;
    double hi = 0.8;

    static MutationFactor fixed(double f) { return {f, f}; }
    static MutationFactor dither(double lo, double hi) { return {lo, hi}; }
    bool dithered() const noexcept { return lo != hi; }

    friend bool operator==(const MutationFactor&, const MutationFactor&) = default;
};

struct DEConfig {
    /// 0 selects default_population_size(dimension).
    std::size_t population_size = 0;
    MutationFactor mutation;
    double crossover_rate = 0.9;
    DEVariant variant = DEVariant::rand1bin;
    std::int64_t max_generations = 1000;
    /// Worker threads for trial evaluation. Results do not depend on it.
    std::size_t eval_threads = 1;

    void validate() const;
    std::size_t resolved_population_size(std::size_t dimension) const;

    friend bool operator==(const DEConfig&, const DEConfig&) = default;
};

/// 10 * D, capped at 100 and never below 4.
std::size_t default_population_size(std::size_t dimension);

struct Population {
    std::vector<SolutionVector> members;
    std::vector<double> fitness;
    std::int64_t generation = 0;
    std::size_t best_index = 0;

    std::size_t size() const noexcept { return members.size(); }
    const SolutionVector& best() const { return members[best_index]; }
    double best_fitness() const { return fitness[best_index]; }
    double mean_fitness() const;

    /// Argmin of cached fitness, lowest index on ties.
    void refresh_best();
};

/// Uniform population inside the problem bounds with fitness cached at the current clock.
Population init_population(const DynamicProblem& problem, const DEConfig& config, Rng& rng);
Population init_population(const DynamicProblem& problem, const DEConfig& config, std::uint64_t seed);

/// Re-evaluates every member at the problem's current clock. Returns evaluations spent.
std::size_t refresh_fitness(Population& pop, const DynamicProblem& problem, std::size_t threads = 1);

struct Donor {
    SolutionVector vector;
    std::array<std::size_t, 3> indices{};
    double factor = 0.0;
};

/// v = base + F * (x_r2 - x_r3), clamped to bounds. base is x_r1 for rand1bin
/// and the population best for best1bin. r1, r2, r3 are drawn distinct from
/// each other and from the target. Draw order: r1, r2, r3, then F if dithered.
Donor mutate(const Population& pop, std::size_t target_index, const DEConfig& config, const BoxBounds& bounds,
             Rng& rng);

/// Binomial crossover. j_rand is drawn first, then one (0, 1] draw per
/// component; component j comes from the donor when draw <= CR or j == j_rand.
SolutionVector crossover(const SolutionVector& target, const SolutionVector& donor, double crossover_rate, Rng& rng);

struct Selection {
    SolutionVector winner;
    double winner_fitness = 0.0;
    bool replaced = false;
};

/// Greedy minimizing selection; the trial wins ties.
Selection select(const SolutionVector& target, double target_fitness, const SolutionVector& trial,
                 double trial_fitness);

struct GenerationStats {
    std::size_t evaluations = 0;
    std::size_t replacements = 0;
};

using DonorObserver = std::function<void(std::size_t target, const Donor&)>;

/// One synchronous generation: all donors and trials are built from the
/// pre-step snapshot in index order, then evaluated at the current clock
/// (possibly in parallel), then selected.
GenerationStats step_generation(Population& pop, const DynamicProblem& problem, const DEConfig& config, Rng& rng,
                                const DonorObserver& observer = {});

} // namespace dynopt

#endif
