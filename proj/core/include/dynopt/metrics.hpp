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
#ifndef DYNOPT_METRICS_HPP
#define DYNOPT_METRICS_HPP

#include "dynopt/de.hpp"
#include "dynopt/dynamic_problem.hpp"
#include "dynopt/sensing.hpp"
#include "dynopt/solution.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dynopt {

struct IterationRecord {
    Iteration t = 0;
    double current_best_fitness = 0.0;
    /// Best since the last change (resets on a change row).
    double best_so_far_fitness = 0.0;
    /// Best over the whole run.
    double cumulative_best_fitness = 0.0;
    double population_mean_fitness = 0.0;
    /// Cumulative objective evaluations at the end of the iteration.
    std::uint64_t evaluations = 0;
    /// First two components every row; the full vector on stride rows.
    SolutionVector best_solution_snapshot;
    /// Generator ground truth at t.
    SolutionVector optimum_snapshot;
    bool change_flag = false;

    friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

/// Per-member fitness captured on stride rows when enabled.
struct PopulationSnapshot {
    Iteration t = 0;
    std::vector<double> fitness;

    friend bool operator==(const PopulationSnapshot&, const PopulationSnapshot&) = default;
};

struct HistoryOptions {
    std::size_t snapshot_stride = 10;
    bool record_population_fitness = false;

    friend bool operator==(const HistoryOptions&, const HistoryOptions&) = default;
};

struct RunHistory {
    std::string label;
    std::size_t dimension = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    HistoryOptions options;
    std::vector<IterationRecord> rows;
    std::vector<ChangeEvent> change_events;
    SolutionVector final_best;
    double final_best_fitness = 0.0;
    std::string config_fingerprint;
    std::uint64_t evaluation_count = 0;
    std::uint64_t sensing_evaluations = 0;
    std::vector<PopulationSnapshot> population_snapshots;
    bool valid = true;
    std::string error;

    friend bool operator==(const RunHistory&, const RunHistory&) = default;
};

/// Empty history carrying the problem geometry.
RunHistory make_history(const DynamicProblem& problem, HistoryOptions options, std::string label = {});

/// Appends one row built from the population's cached fitness.
void record_iteration(RunHistory& history, const Population& pop, const DynamicProblem& problem, Iteration t,
                      bool changed);

std::vector<double> current_best_series(const RunHistory& history);
std::vector<double> cumulative_best_series(const RunHistory& history);

using CountMatrix = std::vector<std::vector<std::uint64_t>>;

/// grid x grid counts of best-solution projections onto dimensions 1 and 2,
/// binned over the history bounds. Requires dimension >= 2 and grid >= 2.
CountMatrix visit_density(const RunHistory& history, std::size_t grid);

struct Histogram {
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
};

/// Equal-width bins over [min, max]. A constant series is centred in a unit-wide range.
Histogram histogram(std::span<const double> values, std::size_t bins);
Histogram fitness_distribution(const RunHistory& history, std::size_t bins);

/// Optimum snapshots of every stride-th row, starting with the first.
std::vector<std::vector<double>> optimum_heatmap(const RunHistory& history, std::size_t stride);

/// Centred moving average; the window shrinks at the edges. window must be odd.
std::vector<double> smooth(std::span<const double> series, std::size_t window);

} // namespace dynopt

#endif
