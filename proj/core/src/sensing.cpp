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
#include "dynopt/sensing.hpp"

#include "dynopt/error.hpp"

#include <algorithm>
#include <cmath>

namespace dynopt {

void SensorConfig::validate() const
{
    if (!(tolerance >= 0.0)) {
        throw ConfigError("sensor tolerance must be >= 0");
    }
}

Sensor::Sensor(const DynamicProblem& problem, SensorConfig config, Rng& rng) : tolerance_(config.tolerance)
{
    config.validate();
    const auto& bounds = problem.bounds();
    sentinels_.reserve(config.sentinel_count);
    for (std::size_t k = 0; k < config.sentinel_count; ++k) {
        SolutionVector s(problem.dimension());
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] = rng.uniform(bounds.lower(i), bounds.upper(i));
        }
        sentinels_.push_back(std::move(s));
    }
    sentinel_cache_.assign(sentinels_.size(), 0.0);
}

Sensor::Sensor(std::vector<SolutionVector> sentinels, double tolerance)
    : sentinels_(std::move(sentinels)), sentinel_cache_(sentinels_.size(), 0.0), tolerance_(tolerance)
{
    SensorConfig{tolerance, sentinels_.size()}.validate();
}

std::optional<ChangeEvent> Sensor::sense(const DynamicProblem& problem, Iteration t)
{
    std::vector<double> fresh(sentinels_.size());
    for (std::size_t k = 0; k < sentinels_.size(); ++k) {
        fresh[k] = problem.evaluate(sentinels_[k], t);
    }
    std::optional<double> fresh_best;
    if (best_) {
        fresh_best = problem.evaluate(*best_, t);
    }
    evaluations_ += fresh.size() + (fresh_best ? 1 : 0);

    if (!primed_) {
        sentinel_cache_ = std::move(fresh);
        if (fresh_best) {
            best_cache_ = *fresh_best;
        }
        primed_ = true;
        return std::nullopt;
    }

    double drift = 0.0;
    for (std::size_t k = 0; k < fresh.size(); ++k) {
        drift = std::max(drift, std::abs(fresh[k] - sentinel_cache_[k]));
    }
    if (fresh_best) {
        drift = std::max(drift, std::abs(*fresh_best - best_cache_));
    }
    if (!(drift > tolerance_)) {
        return std::nullopt;
    }

    sentinel_cache_ = std::move(fresh);
    if (fresh_best) {
        best_cache_ = *fresh_best;
    }
    last_detection_ = t;
    ChangeEvent event{t, drift, std::nullopt};
    if (auto scheduled = problem.last_change_time(); scheduled && *scheduled <= t) {
        event.scheduled_at = scheduled;
    }
    return event;
}

void Sensor::refresh_references(const SolutionVector& best, Iteration t, const DynamicProblem& problem)
{
    best_cache_ = problem.evaluate(best, t);
    best_ = best;
    ++evaluations_;
}

void Sensor::refresh_references(const SolutionVector& best, double fitness)
{
    best_cache_ = fitness;
    best_ = best;
}

std::vector<SolutionVector> Sensor::reference_points() const
{
    std::vector<SolutionVector> refs;
    refs.reserve(sentinels_.size() + 1);
    if (best_) {
        refs.push_back(*best_);
    }
    refs.insert(refs.end(), sentinels_.begin(), sentinels_.end());
    return refs;
}

std::vector<double> Sensor::cached_fitness() const
{
    std::vector<double> cache;
    cache.reserve(sentinel_cache_.size() + 1);
    if (best_) {
        cache.push_back(best_cache_);
    }
    cache.insert(cache.end(), sentinel_cache_.begin(), sentinel_cache_.end());
    return cache;
}

} // namespace dynopt
