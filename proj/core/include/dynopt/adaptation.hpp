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
#ifndef DYNOPT_ADAPTATION_HPP
#define DYNOPT_ADAPTATION_HPP

#include "dynopt/de.hpp"
#include "dynopt/dynamic_problem.hpp"
#include "dynopt/random.hpp"
#include "dynopt/sensing.hpp"

#include <cstdint>
#include <string_view>

namespace dynopt {

enum class AdaptationKind {
    partial_reinit,
    local_search_high_mutation,
    /// partial_reinit followed by local_search_high_mutation.
    hybrid,
};

std::string_view to_string(AdaptationKind kind);
AdaptationKind parse_adaptation_kind(std::string_view name);

/// Burst defaults: best1bin, F dithered in [0.7, 1.2], CR 0.9.
DEConfig default_local_search_config();

struct AdaptationStrategy {
    AdaptationKind kind = AdaptationKind::hybrid;
    double reinit_fraction = 0.10;
    DEConfig local_search_config = default_local_search_config();
    std::int64_t local_search_budget = 50;

    void validate() const;
    friend bool operator==(const AdaptationStrategy&, const AdaptationStrategy&) = default;
};

struct AdaptationOutcome {
    AdaptationKind strategy_used = AdaptationKind::hybrid;
    std::uint64_t evaluations_spent = 0;
    double fitness_before = 0.0;
    double fitness_after = 0.0;
};

/// max(1, round_half_up(fraction * dimension)).
std::size_t reinit_component_count(double fraction, std::size_t dimension);

/// Redraws reinit_component_count() distinct, uniformly chosen components of
/// every member, then re-evaluates the whole population. Returns evaluations spent.
std::size_t partial_reinit(Population& pop, double fraction, const DynamicProblem& problem, Rng& rng);

/// local_search_budget generations of the burst DE configuration on the
/// population, which must already be evaluated on the current landscape.
AdaptationOutcome local_search_burst(Population& pop, const DynamicProblem& problem, const AdaptationStrategy& strategy,
                                     Rng& rng, const DonorObserver& observer = {});

/// Refreshes every cached fitness on the current landscape, then applies the
/// strategy. Throws ConfigError for an event from another time.
AdaptationOutcome adapt(Population& pop, const ChangeEvent& event, const AdaptationStrategy& strategy,
                        const DynamicProblem& problem, Rng& rng, const DonorObserver& observer = {});

} // namespace dynopt

#endif
