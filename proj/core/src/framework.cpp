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
#include "dynopt/framework.hpp"

#include "dynopt/error.hpp"
#include "dynopt/format.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace dynopt {

void FrameworkConfig::validate() const
{
    if (total_iterations < 1) {
        throw ConfigError("total_iterations must be >= 1");
    }
    de.validate();
    strategy.validate();
    sensor.validate();
    if (recovery_target < 0) {
        throw ConfigError("recovery_target must be >= 0");
    }
    if (!(recovery_band >= 1.0)) {
        throw ConfigError("recovery_band must be >= 1");
    }
    if (history.snapshot_stride < 1) {
        throw ConfigError("snapshot_stride must be >= 1");
    }
}

FeedbackState apply_feedback(FeedbackState state, const AdaptationOutcome& /*outcome*/, std::int64_t recovery_iterations)
{
    state.last_recovery_iterations = recovery_iterations;
    if (recovery_iterations > state.recovery_target) {
        state.dither_hi = std::min(kDitherCeiling, state.dither_hi + 0.1);
    } else {
        state.dither_hi = state.dither_hi_default + 0.5 * (state.dither_hi - state.dither_hi_default);
    }
    state.dither_hi = std::clamp(state.dither_hi, state.dither_hi_default, kDitherCeiling);
    return state;
}

RecoveryTime recovery_time(const RunHistory& history, const ChangeEvent& event, double band)
{
    const auto& rows = history.rows;
    const auto at = std::find_if(rows.begin(), rows.end(), [&](const IterationRecord& r) { return r.t == event.detected_at; });
    const bool listed = std::any_of(history.change_events.begin(), history.change_events.end(),
                                    [&](const ChangeEvent& e) { return e.detected_at == event.detected_at; });
    if (at == rows.end() || !listed) {
        throw ConfigError("recovery_time: no change event at t=" + std::to_string(event.detected_at));
    }
    if (at == rows.begin()) {
        throw ConfigError("recovery_time: event has no preceding row");
    }
    const double threshold = band * std::prev(at)->current_best_fitness;

    std::optional<Iteration> next_event;
    for (const auto& e : history.change_events) {
        if (e.detected_at > event.detected_at) {
            next_event = e.detected_at;
            break;
        }
    }
    for (auto it = at; it != rows.end(); ++it) {
        if (next_event && it->t >= *next_event) {
            break;
        }
        if (it->current_best_fitness < threshold) {
            return {it->t - event.detected_at, false};
        }
    }
    const Iteration horizon = next_event ? *next_event : rows.back().t + 1;
    return {horizon - event.detected_at, true};
}

namespace {

struct RecoveryEpisode {
    Iteration started_at = 0;
    double threshold = 0.0;
    AdaptationOutcome outcome;
};

} // namespace

RunHistory run(DynamicProblem& problem, const FrameworkConfig& config, const PhaseObserver& observer)
{
    config.validate();
    const auto notify = [&](Phase phase) {
        if (observer) {
            observer(phase, problem.clock());
        }
    };

    RunHistory history = make_history(problem, config.history);
    history.config_fingerprint = fingerprint(canonical_description(problem, config));

    const Rng root(config.seed);
    Rng init_rng = root.split(Stream::init);
    Rng search_rng = root.split(Stream::search);
    Rng sensor_rng = root.split(Stream::sensor);
    Rng adapt_rng = root.split(Stream::adaptation);

    AdaptationStrategy strategy = config.strategy;
    FeedbackState feedback;
    feedback.dither_hi = strategy.local_search_config.mutation.hi;
    feedback.dither_hi_default = feedback.dither_hi;
    feedback.recovery_target = config.recovery_target;
    std::optional<RecoveryEpisode> episode;

    std::optional<Sensor> sensor;
    Population pop;
    try {
        pop = init_population(problem, config.de, init_rng);
        sensor.emplace(problem, config.sensor, sensor_rng);
        sensor->refresh_references(pop.best(), pop.best_fitness());
        sensor->sense(problem, problem.clock());

        for (std::int64_t k = 0; k < config.total_iterations; ++k) {
            problem.advance_clock();
            notify(Phase::clock);
            const Iteration t = problem.clock();

            const auto event = sensor->sense(problem, t);
            notify(Phase::sense);
            if (event) {
                if (config.feedback_enabled && episode) {
                    feedback = apply_feedback(feedback, episode->outcome, t - episode->started_at);
                    episode.reset();
                    notify(Phase::feedback);
                }
                const double pre_change_best = history.rows.empty() ? pop.best_fitness()
                                                                    : history.rows.back().current_best_fitness;
                if (config.feedback_enabled) {
                    strategy.local_search_config.mutation.hi = feedback.dither_hi;
                }
                const auto outcome = adapt(pop, *event, strategy, problem, adapt_rng);
                history.change_events.push_back(*event);
                episode = RecoveryEpisode{t, config.recovery_band * pre_change_best, outcome};
                notify(Phase::adapt);
            }

            step_generation(pop, problem, config.de, search_rng);
            notify(Phase::search);

            sensor->refresh_references(pop.best(), pop.best_fitness());
            notify(Phase::refresh);

            if (config.feedback_enabled && episode && pop.best_fitness() < episode->threshold) {
                feedback = apply_feedback(feedback, episode->outcome, t - episode->started_at);
                episode.reset();
                notify(Phase::feedback);
            }

            record_iteration(history, pop, problem, t, event.has_value());
            notify(Phase::record);
        }
    } catch (const std::exception& e) {
        history.valid = false;
        history.error = e.what();
    }

    if (!pop.members.empty()) {
        history.final_best = pop.best();
        history.final_best_fitness = pop.best_fitness();
    }
    history.evaluation_count = problem.evaluation_count();
    history.sensing_evaluations = sensor ? sensor->evaluations() : 0;
    return history;
}

std::string canonical_description(const DynamicProblem& problem, const FrameworkConfig& config)
{
    std::ostringstream out;
    out << "dimension=" << problem.dimension() << '\n';
    out << "lower=";
    for (double v : problem.bounds().lower()) {
        out << format_double(v) << ',';
    }
    out << "\nupper=";
    for (double v : problem.bounds().upper()) {
        out << format_double(v) << ',';
    }
    const auto& s = problem.schedule();
    out << "\nchange_frequency=" << s.change_frequency << "\nchange_severity=" << format_double(s.change_severity)
        << "\ntotal_changes_cap=" << (s.total_changes_cap ? std::to_string(*s.total_changes_cap) : "none")
        << "\nproblem_seed=" << problem.seed() << "\nconstraints=" << problem.constraints().size();
    const auto de = [&](const char* prefix, const DEConfig& c) {
        out << '\n' << prefix << ".population_size=" << c.population_size << '\n' << prefix
            << ".mutation=" << format_double(c.mutation.lo) << ',' << format_double(c.mutation.hi) << '\n'
            << prefix << ".crossover_rate=" << format_double(c.crossover_rate) << '\n'
            << prefix << ".variant=" << to_string(c.variant) << '\n'
            << prefix << ".max_generations=" << c.max_generations;
    };
    out << "\ntotal_iterations=" << config.total_iterations;
    de("de", config.de);
    out << "\nstrategy.kind=" << to_string(config.strategy.kind)
        << "\nstrategy.reinit_fraction=" << format_double(config.strategy.reinit_fraction)
        << "\nstrategy.local_search_budget=" << config.strategy.local_search_budget;
    de("strategy.local_search", config.strategy.local_search_config);
    out << "\nsensor.tolerance=" << format_double(config.sensor.tolerance)
        << "\nsensor.sentinel_count=" << config.sensor.sentinel_count
        << "\nfeedback_enabled=" << config.feedback_enabled << "\nrecovery_target=" << config.recovery_target
        << "\nrecovery_band=" << format_double(config.recovery_band)
        << "\nsnapshot_stride=" << config.history.snapshot_stride
        << "\nrecord_population_fitness=" << config.history.record_population_fitness << "\nseed=" << config.seed
        << '\n';
    return out.str();
}

std::string fingerprint(std::string_view text)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace dynopt
