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
#ifndef DYNOPT_BASELINES_HPP
#define DYNOPT_BASELINES_HPP

#include "dynopt/dynamic_problem.hpp"
#include "dynopt/random.hpp"
#include "dynopt/solution.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace dynopt {

// Static comparison optimizers. Both only ever evaluate the t = 0 landscape.

struct AnnealConfig {
    double initial_temperature = 1.0;
    double cooling_exponent = 1.0;
    std::int64_t steps = 2000;
    /// Proposal scale as a fraction of each axis range, at T = T0.
    double step_scale = 0.5;
    /// When set, replaces steps as the stopping rule: the run ends after
    /// exactly this many evaluations (including the start point).
    std::optional<std::uint64_t> evaluation_budget;

    void validate() const;
    /// T_k = T0 / (1 + k)^cooling_exponent.
    double temperature(std::int64_t k) const;
    friend bool operator==(const AnnealConfig&, const AnnealConfig&) = default;
};

struct BasinConfig {
    std::int64_t hops = 50;
    double perturbation_scale = 0.25;
    std::int64_t local_simplex_iterations = 200;
    /// When set, replaces hops as the stopping rule.
    std::optional<std::uint64_t> evaluation_budget;

    void validate() const;
    friend bool operator==(const BasinConfig&, const BasinConfig&) = default;
};

struct BaselineResult {
    SolutionVector best;
    double best_fitness = 0.0;
    /// Best-so-far fitness after each evaluation; non-increasing.
    std::vector<double> trace;
    /// (evaluation index, incumbent) at every improvement, first entry at index 0.
    std::vector<std::pair<std::size_t, SolutionVector>> improvements;

    std::uint64_t evaluations() const noexcept { return trace.size(); }
};

/// Metropolis annealer with Cauchy proposals whose scale shrinks with the temperature.
BaselineResult anneal(const DynamicProblem& problem, const AnnealConfig& config, std::uint64_t seed);

/// Uniform perturbation of the incumbent followed by a Nelder-Mead descent,
/// accepted only on improvement.
BaselineResult basin_hop(const DynamicProblem& problem, const BasinConfig& config, std::uint64_t seed);

using Objective = std::function<double(const SolutionVector&)>;

struct SimplexResult {
    SolutionVector best;
    double best_fitness = 0.0;
    std::int64_t iterations = 0;
};

/// Bound-constrained Nelder-Mead (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5); vertices are clamped to the box. Stops after max_iterations
/// or when the objective returns nullopt (budget exhausted).
SimplexResult nelder_mead(const std::function<std::optional<double>(const SolutionVector&)>& objective,
                          const SolutionVector& start, double start_fitness, const BoxBounds& bounds,
                          std::int64_t max_iterations, double initial_step = 0.1);

/// Maps a per-evaluation trace onto horizon iterations: iteration k (1-based)
/// shows the best after round(k * evaluations / horizon) evaluations. An empty
/// trace gives an empty series.
std::vector<double> pad_trace(const std::vector<double>& trace, std::int64_t horizon);

} // namespace dynopt

#endif
