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
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace dynopt {
namespace {

/// Population converged for one window, then the optimum moves at t = 200.
struct PostChange {
    DynamicProblem problem;
    Population pop;
    ChangeEvent event;
};

PostChange post_change_state(std::size_t d, std::size_t n, std::uint64_t seed)
{
    auto problem = make_moving_optimum_problem(d, BoxBounds::uniform(d, 0, 1), {200, 0.1, std::nullopt}, seed);
    DEConfig config;
    config.population_size = n;
    Rng rng(seed, Stream::search);
    auto pop = init_population(problem, config, seed);
    for (int g = 0; g < 199; ++g) {
        problem.advance_clock();
        step_generation(pop, problem, config, rng);
    }
    problem.advance_clock();
    return {problem, pop, ChangeEvent{200, 0.0, 200}};
}

std::size_t changed_components(const SolutionVector& a, const SolutionVector& b)
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        n += a[i] != b[i];
    }
    return n;
}

TEST(ReinitCount, RoundHalfUpWithFloor)
{
    EXPECT_EQ(reinit_component_count(0.10, 10), 1u);
    EXPECT_EQ(reinit_component_count(0.10, 2), 1u);
    EXPECT_EQ(reinit_component_count(0.25, 10), 3u);
    EXPECT_EQ(reinit_component_count(0.15, 10), 2u);
    EXPECT_EQ(reinit_component_count(1.0, 7), 7u);
    EXPECT_EQ(reinit_component_count(1e-9, 7), 1u);
}

TEST(PartialReinit, ExactlyOneComponentAtTenPercent)
{
    for (std::size_t d : {2u, 10u}) {
        auto s = post_change_state(d, 20, 1);
        const auto before = s.pop.members;
        Rng rng(3);
        partial_reinit(s.pop, 0.10, s.problem, rng);
        for (std::size_t i = 0; i < before.size(); ++i) {
            EXPECT_EQ(changed_components(before[i], s.pop.members[i]), 1u) << "D=" << d << " member " << i;
            EXPECT_EQ(s.pop.fitness[i], s.problem.evaluate(s.pop.members[i]));
        }
    }
}

TEST(PartialReinit, FullFractionIsUniform)
{
    auto problem = make_moving_optimum_problem(4, BoxBounds::uniform(4, 0, 1), {}, 0);
    Population pop;
    pop.members.assign(5000, SolutionVector(4, 0.5));
    refresh_fitness(pop, problem);
    Rng rng(1);
    partial_reinit(pop, 1.0, problem, rng);
    // Chi-square of each axis against 10 equal bins, 9 dof, 99.9% quantile 27.88.
    for (std::size_t j = 0; j < 4; ++j) {
        std::vector<int> bins(10, 0);
        for (const auto& m : pop.members) {
            ASSERT_NE(m[j], 0.5);
            ++bins[std::min<std::size_t>(9, static_cast<std::size_t>(m[j] * 10))];
        }
        double chi2 = 0.0;
        for (int c : bins) {
            chi2 += (c - 500.0) * (c - 500.0) / 500.0;
        }
        EXPECT_LT(chi2, 27.88) << "axis " << j;
    }
}

TEST(LocalSearchBurst, ZeroBudgetIsNoOp)
{
    auto s = post_change_state(3, 12, 0);
    refresh_fitness(s.pop, s.problem);
    const auto before = s.pop.members;
    const auto evals = s.problem.evaluation_count();
    AdaptationStrategy strategy;
    strategy.kind = AdaptationKind::local_search_high_mutation;
    strategy.local_search_budget = 0;
    Rng rng(0);
    const auto out = local_search_burst(s.pop, s.problem, strategy, rng);
    EXPECT_EQ(out.evaluations_spent, 0u);
    EXPECT_EQ(s.pop.members, before);
    EXPECT_EQ(s.problem.evaluation_count(), evals);
}

TEST(LocalSearchBurst, NeverWorsensBest)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto s = post_change_state(2, 20, seed);
        refresh_fitness(s.pop, s.problem);
        AdaptationStrategy strategy;
        strategy.kind = AdaptationKind::local_search_high_mutation;
        strategy.local_search_budget = 30;
        Rng rng(seed);
        std::vector<double> factors;
        const auto out = local_search_burst(s.pop, s.problem, strategy, rng,
                                            [&](std::size_t, const Donor& d) { factors.push_back(d.factor); });
        EXPECT_LE(out.fitness_after, out.fitness_before);
        EXPECT_EQ(out.evaluations_spent, 30u * 20u);
        ASSERT_EQ(factors.size(), 30u * 20u);
        for (double f : factors) {
            ASSERT_GE(f, 0.7);
            ASSERT_LE(f, 1.2);
        }
    }
}

TEST(LocalSearchBurst, RecoversTenfoldInMedian)
{
    std::vector<double> ratios;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = post_change_state(10, 100, seed);
        refresh_fitness(s.pop, s.problem);
        AdaptationStrategy strategy;
        strategy.kind = AdaptationKind::local_search_high_mutation;
        Rng rng(seed, Stream::adaptation);
        const auto out = local_search_burst(s.pop, s.problem, strategy, rng);
        ratios.push_back(out.fitness_after / out.fitness_before);
    }
    EXPECT_LT(oracle::median(ratios), 0.1);
}

TEST(Adapt, PartialReinitDispatchMatchesDirectCall)
{
    auto s = post_change_state(10, 20, 4);
    auto direct = s.pop;
    AdaptationStrategy strategy;
    strategy.kind = AdaptationKind::partial_reinit;
    Rng a(7);
    Rng b(7);
    adapt(s.pop, s.event, strategy, s.problem, a);
    partial_reinit(direct, strategy.reinit_fraction, s.problem, b);
    EXPECT_EQ(s.pop.members, direct.members);
    EXPECT_EQ(s.pop.fitness, direct.fitness);
}

TEST(Adapt, CachesCoherentAfterwards)
{
    for (auto kind : {AdaptationKind::partial_reinit, AdaptationKind::local_search_high_mutation,
                      AdaptationKind::hybrid}) {
        auto s = post_change_state(5, 20, 2);
        AdaptationStrategy strategy;
        strategy.kind = kind;
        Rng rng(1);
        const auto out = adapt(s.pop, s.event, strategy, s.problem, rng);
        EXPECT_EQ(out.strategy_used, kind);
        for (std::size_t i = 0; i < s.pop.size(); ++i) {
            ASSERT_EQ(s.pop.fitness[i], s.problem.evaluate(s.pop.members[i], 200));
        }
        EXPECT_EQ(out.fitness_after, s.pop.best_fitness());
    }
}

TEST(Adapt, HybridWithoutBurstIsSingleComponentReinit)
{
    auto s = post_change_state(10, 20, 5);
    const auto before = s.pop.members;
    AdaptationStrategy strategy;
    strategy.kind = AdaptationKind::hybrid;
    strategy.local_search_budget = 0;
    strategy.reinit_fraction = 1e-6;
    Rng rng(2);
    adapt(s.pop, s.event, strategy, s.problem, rng);
    for (std::size_t i = 0; i < before.size(); ++i) {
        EXPECT_EQ(changed_components(before[i], s.pop.members[i]), 1u);
    }
}

TEST(Adapt, HybridAtLeastAsGoodAsReinit)
{
    int hybrid_wins = 0;
    const int trials = 50;
    for (int trial = 0; trial < trials; ++trial) {
        const auto s = post_change_state(10, 30, static_cast<std::uint64_t>(trial));
        std::vector<Population> results;
        std::vector<double> after;
        for (auto kind : {AdaptationKind::partial_reinit, AdaptationKind::local_search_high_mutation,
                          AdaptationKind::hybrid}) {
            auto state = s;
            AdaptationStrategy strategy;
            strategy.kind = kind;
            Rng rng(static_cast<std::uint64_t>(trial), Stream::adaptation);
            after.push_back(adapt(state.pop, state.event, strategy, state.problem, rng).fitness_after);
            results.push_back(state.pop);
        }
        EXPECT_NE(results[0].members, results[1].members);
        EXPECT_NE(results[0].members, results[2].members);
        EXPECT_NE(results[1].members, results[2].members);
        hybrid_wins += after[2] <= after[0];
    }
    EXPECT_GE(hybrid_wins, 35) << hybrid_wins << "/" << trials;
}

TEST(Adapt, RejectsStaleEvent)
{
    auto s = post_change_state(2, 8, 0);
    AdaptationStrategy strategy;
    Rng rng(0);
    EXPECT_THROW(adapt(s.pop, ChangeEvent{150, 0.0, 150}, strategy, s.problem, rng), ConfigError);
}

TEST(AdaptationStrategy, Validation)
{
    AdaptationStrategy s;
    EXPECT_NO_THROW(s.validate());
    s.reinit_fraction = 0.0;
    EXPECT_THROW(s.validate(), ConfigError);
    s = {};
    s.local_search_budget = -1;
    EXPECT_THROW(s.validate(), ConfigError);
    EXPECT_EQ(parse_adaptation_kind("hybrid"), AdaptationKind::hybrid);
    EXPECT_THROW(parse_adaptation_kind("restart"), ConfigError);
}

} // namespace
} // namespace dynopt
