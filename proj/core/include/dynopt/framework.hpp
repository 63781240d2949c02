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
#ifndef DYNOPT_FRAMEWORK_HPP
#define DYNOPT_FRAMEWORK_HPP

#include "dynopt/adaptation.hpp"
#include "dynopt/de.hpp"
#include "dynopt/dynamic_problem.hpp"
#include "dynopt/metrics.hpp"
#include "dynopt/sensing.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace dynopt {

struct FrameworkConfig {
    std::int64_t total_iterations = 1000;
    DEConfig de;
    AdaptationStrategy strategy;
    SensorConfig sensor;
    bool feedback_enabled = false;
    std::int64_t recovery_target = 100;
    double recovery_band = 1.5;
    HistoryOptions history;
    std::uint64_t seed = 0;

    void validate() const;
    friend bool operator==(const FrameworkConfig&, const FrameworkConfig&) = default;
};

/// Upper dither bound adjusted from observed recovery times.
struct FeedbackState {
    std::optional<std::int64_t> last_recovery_iterations;
    double dither_hi = 1.2;
    double dither_hi_default = 1.2;
    std::int64_t recovery_target = 100;
};

inline constexpr double kDitherCeiling = 2.0;

/// Slow recovery widens dither_hi by 0.1 (capped at 2.0); otherwise it decays
/// halfway back to its default.
FeedbackState apply_feedback(FeedbackState state, const AdaptationOutcome& outcome, std::int64_t recovery_iterations);

struct RecoveryTime {
    std::int64_t iterations = 0;
    /// True when the next change (or the end of the run) came first.
    bool censored = false;
};

/// Iterations from the event until current best fitness first drops below
/// band * (current best on the row before the event). Throws ConfigError when
/// the event is not in the history or has no preceding row.
RecoveryTime recovery_time(const RunHistory& history, const ChangeEvent& event, double band = 1.5);

enum class Phase { clock, sense, adapt, search, refresh, feedback, record };

using PhaseObserver = std::function<void(Phase, Iteration)>;

/// Per-iteration order: advance clock, sense, adapt on a detected change,
/// one DE generation, refresh sensor references, feedback (if enabled),
/// record. Errors stop the loop and return the partial history with
/// valid == false.
RunHistory run(DynamicProblem& problem, const FrameworkConfig& config, const PhaseObserver& observer = {});

/// Canonical text of every setting that affects a run, and its FNV-1a digest.
std::string canonical_description(const DynamicProblem& problem, const FrameworkConfig& config);
std::string fingerprint(std::string_view text);

} // namespace dynopt

#endif
