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
#include "dynopt/metrics.hpp"

#include "dynopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dynopt {

RunHistory make_history(const DynamicProblem& problem, HistoryOptions options, std::string label)
{
    if (options.snapshot_stride < 1) {
        throw ConfigError("snapshot_stride must be >= 1");
    }
    RunHistory history;
    history.label = std::move(label);
    history.dimension = problem.dimension();
    history.lower.assign(problem.bounds().lower().begin(), problem.bounds().lower().end());
    history.upper.assign(problem.bounds().upper().begin(), problem.bounds().upper().end());
    history.options = options;
    return history;
}

void record_iteration(RunHistory& history, const Population& pop, const DynamicProblem& problem, Iteration t,
                      bool changed)
{
    IterationRecord row;
    row.t = t;
    row.current_best_fitness = pop.best_fitness();
    row.population_mean_fitness = pop.mean_fitness();
    row.evaluations = problem.evaluation_count();
    row.change_flag = changed;

    const bool first = history.rows.empty();
    if (first || changed) {
        row.best_so_far_fitness = row.current_best_fitness;
    } else {
        row.best_so_far_fitness = std::min(history.rows.back().best_so_far_fitness, row.current_best_fitness);
    }
    row.cumulative_best_fitness = first ? row.current_best_fitness
                                        : std::min(history.rows.back().cumulative_best_fitness, row.current_best_fitness);

    const auto& best = pop.best();
    const bool stride_row = history.rows.size() % history.options.snapshot_stride == 0;
    const std::size_t keep = stride_row ? best.size() : std::min<std::size_t>(2, best.size());
    row.best_solution_snapshot = SolutionVector(std::vector<double>(best.begin(), best.begin() + keep));
    row.optimum_snapshot = problem.hidden_optimum_at(t);

    if (stride_row && history.options.record_population_fitness) {
        history.population_snapshots.push_back({t, pop.fitness});
    }
    history.rows.push_back(std::move(row));
}

std::vector<double> current_best_series(const RunHistory& history)
{
    std::vector<double> out;
    out.reserve(history.rows.size());
    for (const auto& row : history.rows) {
        out.push_back(row.current_best_fitness);
    }
    return out;
}

std::vector<double> cumulative_best_series(const RunHistory& history)
{
    std::vector<double> out;
    out.reserve(history.rows.size());
    for (const auto& row : history.rows) {
        out.push_back(row.cumulative_best_fitness);
    }
    return out;
}

namespace {

std::size_t bin_of(double value, double lo, double hi, std::size_t bins)
{
    if (!(value > lo)) {
        return 0;
    }
    if (!(value < hi)) {
        return bins - 1;
    }
    const auto b = static_cast<std::size_t>((value - lo) / (hi - lo) * static_cast<double>(bins));
    return std::min(b, bins - 1);
}

} // namespace

CountMatrix visit_density(const RunHistory& history, std::size_t grid)
{
    if (grid < 2) {
        throw ConfigError("visit_density: grid must be >= 2");
    }
    if (history.dimension < 2) {
        throw DimensionError("visit_density: needs at least two dimensions");
    }
    CountMatrix counts(grid, std::vector<std::uint64_t>(grid, 0));
    for (const auto& row : history.rows) {
        const auto& x = row.best_solution_snapshot;
        const std::size_t i = bin_of(x[0], history.lower[0], history.upper[0], grid);
        const std::size_t j = bin_of(x[1], history.lower[1], history.upper[1], grid);
        ++counts[i][j];
    }
    return counts;
}

Histogram histogram(std::span<const double> values, std::size_t bins)
{
    if (bins < 1) {
        throw ConfigError("histogram: bins must be >= 1");
    }
    Histogram h;
    h.counts.assign(bins, 0);
    double lo = 0.0;
    double hi = 1.0;
    if (!values.empty()) {
        const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        lo = *mn;
        hi = *mx;
    }
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    }
    h.edges.back() = hi;
    for (double v : values) {
        ++h.counts[bin_of(v, lo, hi, bins)];
    }
    return h;
}

Histogram fitness_distribution(const RunHistory& history, std::size_t bins)
{
    const auto series = current_best_series(history);
    return histogram(series, bins);
}

std::vector<std::vector<double>> optimum_heatmap(const RunHistory& history, std::size_t stride)
{
    if (stride < 1) {
        throw ConfigError("optimum_heatmap: stride must be >= 1");
    }
    std::vector<std::vector<double>> out;
    for (std::size_t r = 0; r < history.rows.size(); r += stride) {
        const auto& opt = history.rows[r].optimum_snapshot;
        if (opt.empty()) {
            throw ConfigError("optimum_heatmap: optimum snapshots were not retained");
        }
        out.push_back(opt.components());
    }
    return out;
}

std::vector<double> smooth(std::span<const double> series, std::size_t window)
{
    if (window < 1 || window % 2 == 0) {
        throw ConfigError("smooth: window must be a positive odd integer, got " + std::to_string(window));
    }
    const std::size_t half = window / 2;
    const std::size_t n = series.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t begin = i >= half ? i - half : 0;
        const std::size_t end = std::min(n, i + half + 1);
        double sum = 0.0;
        for (std::size_t k = begin; k < end; ++k) {
            sum += series[k];
        }
        out[i] = sum / static_cast<double>(end - begin);
    }
    return out;
}

} // namespace dynopt
