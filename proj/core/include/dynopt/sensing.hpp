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
#ifndef DYNOPT_SENSING_HPP
#define DYNOPT_SENSING_HPP

#include "dynopt/dynamic_problem.hpp"
#include "dynopt/random.hpp"
#include "dynopt/solution.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dynopt {

struct SensorConfig {
    double tolerance = 1e-12;
    std::size_t sentinel_count = 3;

    void validate() const;
    friend bool operator==(const SensorConfig&, const SensorConfig&) = default;
};

/// A detected environment change.
struct ChangeEvent {
    Iteration detected_at = 0;
    /// max |f_new - f_cached| over the reference points.
    double drift_magnitude = 0.0;
    /// Generator ground truth, when known.
    std::optional<Iteration> scheduled_at;

    friend bool operator==(const ChangeEvent&, const ChangeEvent&) = default;
};

/// Change detector that re-evaluates cached reference points (the current
/// best plus fixed sentinels) and reports fitness drift above a tolerance.
class Sensor {
public:
    /// Draws config.sentinel_count sentinels uniformly within the problem bounds.
    Sensor(const DynamicProblem& problem, SensorConfig config, Rng& rng);
    Sensor(std::vector<SolutionVector> sentinels, double tolerance);

    /// The first call primes the caches and never reports. Later calls report
    /// a change when any reference drifts by more than the tolerance, and only
    /// then refresh the caches.
    std::optional<ChangeEvent> sense(const DynamicProblem& problem, Iteration t);

    /// Replaces the best-solution reference and its cache; sentinels are untouched.
    void refresh_references(const SolutionVector& best, Iteration t, const DynamicProblem& problem);
    /// Same, with a fitness already known to equal evaluate(best, t).
    void refresh_references(const SolutionVector& best, double fitness);

    /// Best first (when set), then sentinels.
    std::vector<SolutionVector> reference_points() const;
    std::vector<double> cached_fitness() const;

    double tolerance() const noexcept { return tolerance_; }
    bool primed() const noexcept { return primed_; }
    std::optional<Iteration> last_detection() const noexcept { return last_detection_; }
    std::uint64_t evaluations() const noexcept { return evaluations_; }

private:
    std::optional<SolutionVector> best_;
    double best_cache_ = 0.0;
    std::vector<SolutionVector> sentinels_;
    std::vector<double> sentinel_cache_;
    double tolerance_;
    bool primed_ = false;
    std::optional<Iteration> last_detection_;
    std::uint64_t evaluations_ = 0;
};

} // namespace dynopt

#endif
