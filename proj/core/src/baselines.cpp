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
#include "dynopt/baselines.hpp"

#include "dynopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dynopt {

void AnnealConfig::validate() const
{
    if (!(initial_temperature > 0.0)) {
        throw ConfigError("anneal: initial_temperature must be > 0");
    }
    if (!(cooling_exponent > 0.0)) {
        throw ConfigError("anneal: cooling_exponent must be > 0 (temperature must strictly decrease)");
    }
    if (steps < 1) {
        throw ConfigError("anneal: steps must be >= 1");
    }
    if (!(step_scale > 0.0)) {
        throw ConfigError("anneal: step_scale must be > 0");
    }
    if (evaluation_budget && *evaluation_budget < 1) {
        throw ConfigError("anneal: evaluation_budget must be >= 1");
    }
}

double AnnealConfig::temperature(std::int64_t k) const
{
    return initial_temperature / std::pow(1.0 + static_cast<double>(k), cooling_exponent);
}

void BasinConfig::validate() const
{
    if (hops < 1) {
        throw ConfigError("basin_hop: hops must be >= 1");
    }
    if (!(perturbation_scale >= 0.0)) {
        throw ConfigError("basin_hop: perturbation_scale must be >= 0");
    }
    if (local_simplex_iterations < 0) {
        throw ConfigError("basin_hop: local_simplex_iterations must be >= 0");
    }
    if (evaluation_budget && *evaluation_budget < 1) {
        throw ConfigError("basin_hop: evaluation_budget must be >= 1");
    }
}

namespace {

/// Counts evaluations against the frozen landscape and keeps the best-so-far trace.
class Tracker {
public:
    Tracker(const DynamicProblem& problem, std::optional<std::uint64_t> budget) : problem_(problem), budget_(budget) {}

    bool exhausted() const { return budget_ && result_.trace.size() >= *budget_; }

    std::optional<double> operator()(const SolutionVector& x)
    {
        if (exhausted()) {
            return std::nullopt;
        }
        const double f = problem_.evaluate(x, 0);
        if (result_.trace.empty() || f < result_.best_fitness) {
            result_.best = x;
            result_.best_fitness = f;
            result_.improvements.emplace_back(result_.trace.size(), x);
        }
        result_.trace.push_back(result_.best_fitness);
        return f;
    }

    BaselineResult take() { return std::move(result_); }

private:
    const DynamicProblem& problem_;
    std::optional<std::uint64_t> budget_;
    BaselineResult result_;
};

SolutionVector uniform_point(const BoxBounds& bounds, Rng& rng)
{
    SolutionVector x(bounds.dimension());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform(bounds.lower(i), bounds.upper(i));
    }
    return x;
}

} // namespace

BaselineResult anneal(const DynamicProblem& problem, const AnnealConfig& config, std::uint64_t seed)
{
    config.validate();
    const auto& bounds = problem.bounds();
    Rng rng(seed, Stream::baseline);
    Tracker track(problem, config.evaluation_budget);

    SolutionVector current = uniform_point(bounds, rng);
    double current_f = *track(current);
    for (std::int64_t k = 0; (config.evaluation_budget || k < config.steps) && !track.exhausted(); ++k) {
        const double temperature = config.temperature(k);
        const double scale = config.step_scale * temperature / config.initial_temperature;
        SolutionVector candidate = current;
        for (std::size_t i = 0; i < candidate.size(); ++i) {
            candidate[i] += scale * bounds.range(i) * rng.cauchy();
        }
        candidate = clamp_to_bounds(std::move(candidate), bounds);
        const double f = *track(candidate);
        const double delta = f - current_f;
        const double u = rng.uniform01();
        if (delta <= 0.0 || u < std::exp(-delta / temperature)) {
            current = std::move(candidate);
            current_f = f;
        }
    }
    return track.take();
}

SimplexResult nelder_mead(const std::function<std::optional<double>(const SolutionVector&)>& objective,
                          const SolutionVector& start, double start_fitness, const BoxBounds& bounds,
                          std::int64_t max_iterations, double initial_step)
{
    const std::size_t n = start.size();
    std::vector<SolutionVector> vertices{start};
    std::vector<double> values{start_fitness};
    SimplexResult result{start, start_fitness, 0};

    const auto finish = [&] {
        const auto best = std::min_element(values.begin(), values.end()) - values.begin();
        result.best = vertices[static_cast<std::size_t>(best)];
        result.best_fitness = values[static_cast<std::size_t>(best)];
        return result;
    };

    for (std::size_t i = 0; i < n; ++i) {
        SolutionVector v = start;
        const double step = initial_step * bounds.range(i);
        v[i] = v[i] + step <= bounds.upper(i) ? v[i] + step : v[i] - step;
        v = clamp_to_bounds(std::move(v), bounds);
        const auto f = objective(v);
        if (!f) {
            return finish();
        }
        vertices.push_back(std::move(v));
        values.push_back(*f);
    }

    std::vector<std::size_t> order(n + 1);
    const auto point = [&](const SolutionVector& centroid, const SolutionVector& worst, double coeff) {
        SolutionVector p(n);
        for (std::size_t j = 0; j < n; ++j) {
            p[j] = centroid[j] + coeff * (centroid[j] - worst[j]);
        }
        return clamp_to_bounds(std::move(p), bounds);
    };

    for (; result.iterations < max_iterations; ++result.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        SolutionVector centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                centroid[j] += vertices[order[k]][j];
            }
        }
        for (auto& c : centroid) {
            c /= static_cast<double>(n);
        }

        SolutionVector reflected = point(centroid, vertices[worst], 1.0);
        const auto fr = objective(reflected);
        if (!fr) {
            break;
        }
        if (*fr < values[best]) {
            SolutionVector expanded = point(centroid, vertices[worst], 2.0);
            const auto fe = objective(expanded);
            if (!fe) {
                vertices[worst] = std::move(reflected);
                values[worst] = *fr;
                break;
            }
            if (*fe < *fr) {
                vertices[worst] = std::move(expanded);
                values[worst] = *fe;
            } else {
                vertices[worst] = std::move(reflected);
                values[worst] = *fr;
            }
            continue;
        }
        if (*fr < values[second_worst]) {
            vertices[worst] = std::move(reflected);
            values[worst] = *fr;
            continue;
        }
        // Outside contraction when the reflection beat the worst, inside otherwise.
        const bool outside = *fr < values[worst];
        SolutionVector contracted = point(centroid, vertices[worst], outside ? 0.5 : -0.5);
        const auto fc = objective(contracted);
        if (!fc) {
            break;
        }
        if (*fc < (outside ? *fr : values[worst])) {
            vertices[worst] = std::move(contracted);
            values[worst] = *fc;
            continue;
        }
        bool stopped = false;
        for (std::size_t k = 1; k <= n && !stopped; ++k) {
            const std::size_t idx = order[k];
            for (std::size_t j = 0; j < n; ++j) {
                vertices[idx][j] = vertices[best][j] + 0.5 * (vertices[idx][j] - vertices[best][j]);
            }
            const auto fs = objective(vertices[idx]);
            if (!fs) {
                values[idx] = values[best] + 1.0;
                stopped = true;
                break;
            }
            values[idx] = *fs;
        }
        if (stopped) {
            break;
        }
    }
    return finish();
}

BaselineResult basin_hop(const DynamicProblem& problem, const BasinConfig& config, std::uint64_t seed)
{
    config.validate();
    const auto& bounds = problem.bounds();
    Rng rng(seed, Stream::baseline);
    Tracker track(problem, config.evaluation_budget);
    const auto objective = [&](const SolutionVector& x) { return track(x); };

    SolutionVector incumbent = uniform_point(bounds, rng);
    double incumbent_f = *track(incumbent);
    for (std::int64_t hop = 0; (config.evaluation_budget || hop < config.hops) && !track.exhausted(); ++hop) {
        SolutionVector start = incumbent;
        std::optional<double> f0 = incumbent_f;
        if (config.perturbation_scale > 0.0) {
            for (std::size_t i = 0; i < start.size(); ++i) {
                start[i] += config.perturbation_scale * bounds.range(i) * rng.uniform(-1.0, 1.0);
            }
            start = clamp_to_bounds(std::move(start), bounds);
            f0 = track(start);
            if (!f0) {
                break;
            }
        }
        const auto local = nelder_mead(objective, start, *f0, bounds, config.local_simplex_iterations);
        if (local.best_fitness < incumbent_f) {
            incumbent = local.best;
            incumbent_f = local.best_fitness;
        }
    }
    return track.take();
}

std::vector<double> pad_trace(const std::vector<double>& trace, std::int64_t horizon)
{
    std::vector<double> out;
    if (trace.empty() || horizon < 1) {
        return out;
    }
    out.reserve(static_cast<std::size_t>(horizon));
    const double per_iteration = static_cast<double>(trace.size()) / static_cast<double>(horizon);
    for (std::int64_t k = 1; k <= horizon; ++k) {
        auto count = static_cast<std::size_t>(std::llround(static_cast<double>(k) * per_iteration));
        count = std::clamp<std::size_t>(count, 1, trace.size());
        out.push_back(trace[count - 1]);
    }
    return out;
}

} // namespace dynopt
