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
#include "dynopt/dynamic_problem.hpp"

#include "dynopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dynopt {

void ChangeSchedule::validate() const
{
    if (change_frequency < 1) {
        throw ConfigError("change_frequency must be >= 1");
    }
    if (!(change_severity > 0.0 && change_severity <= 1.0)) {
        throw ConfigError("change_severity must lie in (0, 1]");
    }
    if (total_changes_cap && *total_changes_cap < 0) {
        throw ConfigError("total_changes_cap must be non-negative");
    }
}

SolutionVector random_unit_direction(std::size_t dimension, Rng& rng)
{
    SolutionVector u(dimension);
    double norm = 0.0;
    while (norm == 0.0) {
        norm = 0.0;
        for (auto& c : u) {
            c = rng.normal();
            norm += c * c;
        }
    }
    norm = std::sqrt(norm);
    for (auto& c : u) {
        c /= norm;
    }
    return u;
}

DynamicProblem::DynamicProblem(BoxBounds bounds, ChangeSchedule schedule, std::uint64_t seed,
                               std::vector<Constraint> constraints)
    : bounds_(std::move(bounds)),
      schedule_(schedule),
      seed_(seed),
      constraints_(std::move(constraints)),
      environment_(seed, Stream::environment)
{
    schedule_.validate();
    for (const auto& c : constraints_) {
        if (!c.function) {
            throw ConfigError("constraint without a function");
        }
        if (!(c.weight >= 0.0)) {
            throw ConfigError("constraint weight must be non-negative");
        }
    }
    SolutionVector initial(bounds_.dimension());
    for (std::size_t i = 0; i < initial.size(); ++i) {
        initial[i] = environment_.uniform(bounds_.lower(i), bounds_.upper(i));
    }
    optima_.push_back(std::move(initial));
}

DynamicProblem::DynamicProblem(const DynamicProblem& other)
    : bounds_(other.bounds_),
      schedule_(other.schedule_),
      seed_(other.seed_),
      constraints_(other.constraints_),
      environment_(other.environment_),
      clock_(other.clock_),
      optima_(other.optima_),
      change_log_(other.change_log_),
      evaluations_(other.evaluation_count())
{
}

DynamicProblem& DynamicProblem::operator=(const DynamicProblem& other)
{
    if (this != &other) {
        DynamicProblem copy(other);
        *this = std::move(copy);
    }
    return *this;
}

DynamicProblem::DynamicProblem(DynamicProblem&& other) noexcept
    : bounds_(std::move(other.bounds_)),
      schedule_(other.schedule_),
      seed_(other.seed_),
      constraints_(std::move(other.constraints_)),
      environment_(std::move(other.environment_)),
      clock_(other.clock_),
      optima_(std::move(other.optima_)),
      change_log_(std::move(other.change_log_)),
      evaluations_(other.evaluation_count())
{
}

DynamicProblem& DynamicProblem::operator=(DynamicProblem&& other) noexcept
{
    bounds_ = std::move(other.bounds_);
    schedule_ = other.schedule_;
    seed_ = other.seed_;
    constraints_ = std::move(other.constraints_);
    environment_ = std::move(other.environment_);
    clock_ = other.clock_;
    optima_ = std::move(other.optima_);
    change_log_ = std::move(other.change_log_);
    evaluations_.store(other.evaluation_count(), std::memory_order_relaxed);
    return *this;
}

std::size_t DynamicProblem::epoch_of(Iteration t) const
{
    if (t < 0 || t > clock_) {
        throw EvaluationError("time " + std::to_string(t) + " outside [0, " + std::to_string(clock_) + "]");
    }
    // optima_[k] is in force from the k-th change time onwards.
    const auto epoch = static_cast<std::size_t>(t / schedule_.change_frequency);
    return std::min(epoch, optima_.size() - 1);
}

const SolutionVector& DynamicProblem::hidden_optimum_at(Iteration t) const
{
    return optima_[epoch_of(t)];
}

double DynamicProblem::evaluate(const SolutionVector& x, Iteration t) const
{
    if (x.size() != dimension()) {
        throw DimensionError("evaluate: vector has " + std::to_string(x.size()) + " components, problem dimension is "
                             + std::to_string(dimension()));
    }
    const SolutionVector& optimum = optima_[epoch_of(t)];
    evaluations_.fetch_add(1, std::memory_order_relaxed);

    double value = squared_distance(x.view(), optimum.view());
    for (const auto& c : constraints_) {
        const double g = c.function(x.view(), t);
        if (c.kind == Constraint::Kind::inequality) {
            const double violation = std::max(0.0, g);
            value += c.weight * violation * violation;
        } else {
            value += c.weight * g * g;
        }
    }
    if (!std::isfinite(value)) {
        throw EvaluationError("evaluate: non-finite objective value");
    }
    return value;
}

std::optional<ScheduledChange> DynamicProblem::advance_clock()
{
    ++clock_;
    if (clock_ % schedule_.change_frequency != 0) {
        return std::nullopt;
    }
    if (schedule_.total_changes_cap && static_cast<std::int64_t>(changes_applied()) >= *schedule_.total_changes_cap) {
        return std::nullopt;
    }
    const SolutionVector& current = optima_.back();
    const SolutionVector direction = random_unit_direction(dimension(), environment_);
    SolutionVector moved(dimension());
    for (std::size_t i = 0; i < moved.size(); ++i) {
        moved[i] = current[i] + schedule_.change_severity * bounds_.range(i) * direction[i];
    }
    moved = clamp_to_bounds(std::move(moved), bounds_);
    const ScheduledChange change{clock_, distance(moved.view(), current.view())};
    optima_.push_back(std::move(moved));
    change_log_.push_back(change);
    return change;
}

std::optional<Iteration> DynamicProblem::last_change_time() const
{
    if (change_log_.empty()) {
        return std::nullopt;
    }
    return change_log_.back().time;
}

DynamicProblem make_moving_optimum_problem(std::size_t dimension, BoxBounds bounds, ChangeSchedule schedule,
                                           std::uint64_t seed)
{
    if (dimension < 1) {
        throw ConfigError("dimension must be >= 1");
    }
    if (bounds.dimension() != dimension) {
        throw DimensionError("bounds dimension " + std::to_string(bounds.dimension()) + " != problem dimension "
                             + std::to_string(dimension));
    }
    return DynamicProblem(std::move(bounds), schedule, seed);
}

} // namespace dynopt
