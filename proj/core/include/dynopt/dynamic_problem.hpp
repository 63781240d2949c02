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
#ifndef DYNOPT_DYNAMIC_PROBLEM_HPP
#define DYNOPT_DYNAMIC_PROBLEM_HPP

#include "dynopt/random.hpp"
#include "dynopt/solution.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace dynopt {

using Iteration = std::int64_t;

struct ChangeSchedule {
    Iteration change_frequency = 200;
    /// Fraction of each axis range the optimum travels per change.
    double change_severity = 0.1;
    std::optional<std::int64_t> total_changes_cap;

    void validate() const;
    friend bool operator==(const ChangeSchedule&, const ChangeSchedule&) = default;
};

/// Optimum displacement applied by the generator.
struct ScheduledChange {
    Iteration time = 0;
    double magnitude = 0.0;
};

using ConstraintFunction = std::function<double(std::span<const double>, Iteration)>;

/// g(x,t) <= 0 (inequality) or h(x,t) = 0 (equality), handled by quadratic penalty.
struct Constraint {
    enum class Kind { inequality, equality };
    Kind kind = Kind::inequality;
    ConstraintFunction function;
    double weight = 1e3;
};

/// Moving-optimum problem: f(x,t) = sum_i (x_i - opt_i(t))^2 plus constraint
/// penalties, minimized over a box.
///
/// The optimum only moves inside advance_clock(). Every optimum the generator
/// has produced is retained, so evaluate(x, t) is a pure function of (x, t)
/// for any t up to the current clock. The evaluation counter is atomic; all
/// other state has a single writer (advance_clock).
class DynamicProblem {
public:
    DynamicProblem(BoxBounds bounds, ChangeSchedule schedule, std::uint64_t seed,
                   std::vector<Constraint> constraints = {});

    DynamicProblem(const DynamicProblem& other);
    DynamicProblem& operator=(const DynamicProblem& other);
    DynamicProblem(DynamicProblem&& other) noexcept;
    DynamicProblem& operator=(DynamicProblem&& other) noexcept;
    ~DynamicProblem() = default;

    std::size_t dimension() const noexcept { return bounds_.dimension(); }
    const BoxBounds& bounds() const noexcept { return bounds_; }
    const ChangeSchedule& schedule() const noexcept { return schedule_; }
    std::uint64_t seed() const noexcept { return seed_; }
    Iteration clock() const noexcept { return clock_; }
    std::span<const Constraint> constraints() const noexcept { return constraints_; }

    /// f(x, t) + P(x, t). Requires 0 <= t <= clock(). Counts one evaluation.
    double evaluate(const SolutionVector& x, Iteration t) const;
    double evaluate(const SolutionVector& x) const { return evaluate(x, clock_); }

    /// Ticks the clock; moves the optimum when the new time is a multiple of
    /// the change frequency and the change cap allows it.
    std::optional<ScheduledChange> advance_clock();

    /// Ground truth, for generator-aware analyses only. Optimizers must not read it.
    const SolutionVector& hidden_optimum() const { return optima_.back(); }
    const SolutionVector& hidden_optimum_at(Iteration t) const;

    std::size_t changes_applied() const noexcept { return optima_.size() - 1; }
    std::optional<Iteration> last_change_time() const;
    const std::vector<ScheduledChange>& change_log() const noexcept { return change_log_; }

    std::uint64_t evaluation_count() const noexcept { return evaluations_.load(std::memory_order_relaxed); }
    void reset_evaluation_count() noexcept { evaluations_.store(0, std::memory_order_relaxed); }

private:
    std::size_t epoch_of(Iteration t) const;

    BoxBounds bounds_;
    ChangeSchedule schedule_;
    std::uint64_t seed_;
    std::vector<Constraint> constraints_;
    Rng environment_;
    Iteration clock_ = 0;
    std::vector<SolutionVector> optima_;
    std::vector<ScheduledChange> change_log_;
    mutable std::atomic<std::uint64_t> evaluations_{0};
};

/// Builds the moving-optimum benchmark with opt(0) drawn uniformly in bounds
/// from the environment stream of \p seed.
DynamicProblem make_moving_optimum_problem(std::size_t dimension, BoxBounds bounds, ChangeSchedule schedule,
                                           std::uint64_t seed);

/// Unit-norm direction drawn from \p rng (normalized Gaussian vector).
SolutionVector random_unit_direction(std::size_t dimension, Rng& rng);

} // namespace dynopt

#endif
