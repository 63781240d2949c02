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
#include "experiment.hpp"

#include "dynopt/error.hpp"
#include "dynopt/format.hpp"
#include "dynopt/history_io.hpp"
#include "dynopt/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace dynopt::experiment {

namespace fs = std::filesystem;

bool ExperimentResult::all_valid() const
{
    return std::all_of(runs.begin(), runs.end(), [](const RunSummary& r) { return r.valid; });
}

fs::path run_directory(const fs::path& experiment_dir, const std::string& label, std::size_t dimension, std::uint64_t seed)
{
    return experiment_dir / "runs" / label / ("d" + std::to_string(dimension)) / ("seed" + std::to_string(seed));
}

namespace {

DynamicProblem make_problem(const ProblemSettings& settings, std::size_t dimension, std::uint64_t seed)
{
    return make_moving_optimum_problem(dimension, BoxBounds::uniform(dimension, settings.lower, settings.upper),
                                       settings.schedule, seed);
}

void write_analysis(const RunHistory& history, const AnalysisSettings& analysis, const fs::path& dir)
{
    std::vector<Iteration> times;
    times.reserve(history.rows.size());
    for (const auto& row : history.rows) {
        times.push_back(row.t);
    }
    const auto series = current_best_series(history);
    write_text_file(dir / "smoothed.csv", series_csv(smooth(series, analysis.smoothing_window), times));
    write_text_file(dir / "fitness_distribution.csv", histogram_csv(fitness_distribution(history, analysis.histogram_bins)));
    write_text_file(dir / "heatmap.csv", real_matrix_csv(optimum_heatmap(history, analysis.heatmap_stride)));
    if (history.dimension >= 2) {
        write_text_file(dir / "density.csv", count_matrix_csv(visit_density(history, analysis.density_grid)));
    }
}

RunSummary summarize(const RunHistory& history, const std::string& kind, std::size_t dimension, std::uint64_t seed,
                     const DynamicProblem& problem, double band, bool with_recovery)
{
    RunSummary s;
    s.label = history.label;
    s.kind = kind;
    s.dimension = dimension;
    s.seed = seed;
    s.valid = history.valid;
    s.error = history.error;
    s.evaluations = history.evaluation_count;
    s.sensing_evaluations = history.sensing_evaluations;
    if (!history.final_best.empty()) {
        s.end_error = distance(history.final_best.view(), problem.hidden_optimum().view());
    } else {
        s.end_error = std::numeric_limits<double>::quiet_NaN();
    }
    if (with_recovery) {
        for (const auto& e : history.change_events) {
            if (e.detected_at > history.rows.front().t) {
                s.recoveries.push_back(recovery_time(history, e, band));
            }
        }
    }
    return s;
}

std::string baseline_description(const BaselineEntry& b, const DynamicProblem& problem, std::uint64_t budget)
{
    std::ostringstream out;
    out << "baseline=" << b.label << "\ndimension=" << problem.dimension() << "\nseed=" << problem.seed()
        << "\nchange_frequency=" << problem.schedule().change_frequency
        << "\nchange_severity=" << format_double(problem.schedule().change_severity) << "\nbudget=" << budget;
    if (b.kind == BaselineKind::dual_annealing) {
        out << "\nkind=dual_annealing\nT0=" << format_double(b.anneal.initial_temperature)
            << "\ncooling=" << format_double(b.anneal.cooling_exponent) << "\nsteps=" << b.anneal.steps
            << "\nstep_scale=" << format_double(b.anneal.step_scale);
    } else {
        out << "\nkind=basinhopping\nhops=" << b.basin.hops << "\nperturbation=" << format_double(b.basin.perturbation_scale)
            << "\nsimplex_iterations=" << b.basin.local_simplex_iterations;
    }
    out << '\n';
    return out.str();
}

/// Lays a static baseline's trace over the dynamic timeline: row t shows the
/// best found after the matching share of its evaluations, next to the true
/// (moving) optimum at t.
RunHistory baseline_history(const BaselineEntry& entry, const BaselineResult& result, DynamicProblem& problem,
                            const FrameworkConfig& fw, std::uint64_t budget)
{
    RunHistory history = make_history(problem, fw.history, entry.label);
    history.config_fingerprint = fingerprint(baseline_description(entry, problem, budget));
    const auto padded = pad_trace(result.trace, fw.total_iterations);
    const double per_iteration = static_cast<double>(result.trace.size()) / static_cast<double>(fw.total_iterations);
    std::size_t improvement = 0;
    for (std::int64_t k = 0; k < fw.total_iterations; ++k) {
        const auto change = problem.advance_clock();
        const Iteration t = problem.clock();
        const auto used = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::llround(static_cast<double>(k + 1) * per_iteration)), 1, result.trace.size());
        while (improvement + 1 < result.improvements.size() && result.improvements[improvement + 1].first < used) {
            ++improvement;
        }
        const auto& x = result.improvements[improvement].second;

        IterationRecord row;
        row.t = t;
        row.current_best_fitness = padded[static_cast<std::size_t>(k)];
        row.best_so_far_fitness = row.current_best_fitness;
        row.cumulative_best_fitness = row.current_best_fitness;
        row.population_mean_fitness = row.current_best_fitness;
        row.evaluations = used;
        row.change_flag = change.has_value();
        const bool stride_row = history.rows.size() % history.options.snapshot_stride == 0;
        const std::size_t keep = stride_row ? x.size() : std::min<std::size_t>(2, x.size());
        row.best_solution_snapshot = SolutionVector(std::vector<double>(x.begin(), x.begin() + keep));
        row.optimum_snapshot = problem.hidden_optimum();
        history.rows.push_back(std::move(row));
        if (change) {
            history.change_events.push_back({t, change->magnitude, t});
        }
    }
    history.final_best = result.best;
    history.final_best_fitness = result.best_fitness;
    history.evaluation_count = result.evaluations();
    return history;
}

struct Group {
    std::size_t dimension;
    std::uint64_t seed;
};

std::vector<RunSummary> run_group(const ExperimentSpec& spec, const fs::path& dir, const Group& g)
{
    std::vector<RunSummary> out;
    const auto& fw = spec.framework;
    std::uint64_t budget = 0;

    for (const auto& entry : spec.strategies) {
        DynamicProblem problem = make_problem(spec.problem, g.dimension, g.seed);
        FrameworkConfig config = fw;
        config.strategy = entry.strategy;
        config.seed = g.seed;
        RunHistory history = run(problem, config);
        history.label = entry.label;
        budget = std::max(budget, history.evaluation_count);

        const auto run_dir = run_directory(dir, entry.label, g.dimension, g.seed);
        write_history(history, run_dir);
        if (history.valid) {
            write_analysis(history, spec.analysis, run_dir);
        }
        out.push_back(summarize(history, std::string(to_string(entry.strategy.kind)), g.dimension, g.seed, problem,
                                fw.recovery_band, history.valid));
        out.back().directory = run_dir;
    }
    if (budget == 0) {
        budget = static_cast<std::uint64_t>(fw.total_iterations) * fw.de.resolved_population_size(g.dimension);
    }

    for (const auto& entry : spec.baselines) {
        DynamicProblem problem = make_problem(spec.problem, g.dimension, g.seed);
        const std::uint64_t run_budget = entry.evaluation_budget.value_or(budget);
        RunHistory history;
        try {
            BaselineResult result;
            if (entry.kind == BaselineKind::dual_annealing) {
                AnnealConfig cfg = entry.anneal;
                cfg.evaluation_budget = run_budget;
                result = anneal(problem, cfg, g.seed);
            } else {
                BasinConfig cfg = entry.basin;
                cfg.evaluation_budget = run_budget;
                result = basin_hop(problem, cfg, g.seed);
            }
            history = baseline_history(entry, result, problem, fw, run_budget);
        } catch (const std::exception& e) {
            history = make_history(problem, fw.history, entry.label);
            history.valid = false;
            history.error = e.what();
        }
        const auto run_dir = run_directory(dir, entry.label, g.dimension, g.seed);
        write_history(history, run_dir);
        if (history.valid) {
            write_analysis(history, spec.analysis, run_dir);
        }
        out.push_back(summarize(history, entry.kind == BaselineKind::dual_annealing ? "dual_annealing" : "basinhopping",
                                g.dimension, g.seed, problem, fw.recovery_band, false));
        out.back().directory = run_dir;
    }
    return out;
}

double quantile(std::vector<double> v, double q)
{
    if (v.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::string summary_csv(const ExperimentSpec& spec, const std::vector<RunSummary>& runs)
{
    std::string out = "label,kind,dimension,runs,failed,median_end_error,iqr_end_error,mean_recovery_time,"
                      "censored_recoveries,mean_evaluations,mean_sensing_evaluations\n";
    std::vector<std::string> labels;
    for (const auto& s : spec.strategies) {
        labels.push_back(s.label);
    }
    for (const auto& b : spec.baselines) {
        labels.push_back(b.label);
    }
    for (const auto& label : labels) {
        for (std::size_t d : spec.problem.dimensions) {
            std::vector<double> errors;
            double recovery_sum = 0.0;
            std::size_t recovery_n = 0;
            std::size_t censored = 0;
            double evals = 0.0;
            double sensing = 0.0;
            std::size_t n = 0;
            std::size_t failed = 0;
            std::string kind;
            for (const auto& r : runs) {
                if (r.label != label || r.dimension != d) {
                    continue;
                }
                kind = r.kind;
                ++n;
                if (!r.valid) {
                    ++failed;
                    continue;
                }
                errors.push_back(r.end_error);
                for (const auto& rec : r.recoveries) {
                    recovery_sum += static_cast<double>(rec.iterations);
                    ++recovery_n;
                    censored += rec.censored ? 1 : 0;
                }
                evals += static_cast<double>(r.evaluations);
                sensing += static_cast<double>(r.sensing_evaluations);
            }
            const double ok = static_cast<double>(n - failed);
            out += label + ',' + kind + ',' + std::to_string(d) + ',' + std::to_string(n) + ',' + std::to_string(failed)
                   + ',' + format_double(quantile(errors, 0.5)) + ','
                   + format_double(quantile(errors, 0.75) - quantile(errors, 0.25)) + ','
                   + (recovery_n ? format_double(recovery_sum / static_cast<double>(recovery_n)) : std::string()) + ','
                   + std::to_string(censored) + ',' + (ok > 0 ? format_double(evals / ok) : std::string()) + ','
                   + (ok > 0 ? format_double(sensing / ok) : std::string()) + '\n';
        }
    }
    return out;
}

std::string rel(const fs::path& p, const fs::path& base)
{
    return p.lexically_relative(base).generic_string();
}

void write_plot_scripts(const ExperimentSpec& spec, const fs::path& dir)
{
    std::vector<std::string> labels;
    for (const auto& s : spec.strategies) {
        labels.push_back(s.label);
    }
    for (const auto& b : spec.baselines) {
        labels.push_back(b.label);
    }
    const std::uint64_t seed = spec.seeds.front();
    const std::size_t d0 = spec.problem.dimensions.front();
    const auto first = run_directory(dir, labels.front(), d0, seed);
    const std::string first_rel = rel(first, dir);
    const std::string header = "# Run from the experiment directory: gnuplot -p <script>\n"
                               "set datafile separator ','\nset key autotitle columnhead\n";

    // Fitness history of the first competitor: current, cumulative best, mean.
    write_text_file(dir / "plot_fitness_history.gp",
                    header + "set logscale y\nset xlabel 'Iteration'\nset ylabel 'Fitness'\nplot '" + first_rel
                        + "/history.csv' using 1:3 with lines title 'current best', '' using 1:5 with lines dt 2 title 'cumulative best', "
                          "'' using 1:6 with lines dt 3 title 'population mean'\n");

    std::string cmp = header + "set logscale y\nset xlabel 'Iteration'\nset ylabel 'Fitness'\nplot ";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        cmp += (i ? ", " : "") + ("'" + rel(run_directory(dir, labels[i], d0, seed), dir) + "/history.csv' using 1:3 with lines title '"
                                  + labels[i] + "'");
    }
    write_text_file(dir / "plot_comparison.gp", cmp + '\n');

    std::string dims = header + "set logscale y\nset xlabel 'Iteration'\nset ylabel 'Best fitness'\nplot ";
    for (std::size_t i = 0; i < spec.problem.dimensions.size(); ++i) {
        const auto dd = spec.problem.dimensions[i];
        dims += (i ? ", " : "") + ("'" + rel(run_directory(dir, labels.front(), dd, seed), dir)
                                   + "/history.csv' using 1:3 with lines title 'D=" + std::to_string(dd) + "'");
    }
    write_text_file(dir / "plot_dimensions.gp", dims + '\n');

    write_text_file(dir / "plot_heatmap.gp",
                    "set datafile separator ','\nset xlabel 'Component'\nset ylabel 'Time step'\nset yrange [*:*] reverse\n"
                    "plot '" + first_rel + "/heatmap.csv' matrix with image title 'Optimum components'\n");

    // history.csv column of best_0 (1-based).
    const std::size_t best1 = 8;
    if (d0 >= 2) {
        write_text_file(dir / "plot_trajectory.gp",
                        header + "set xlabel 'Dimension 1'\nset ylabel 'Dimension 2'\nplot '" + first_rel
                            + "/history.csv' using " + std::to_string(best1) + ":" + std::to_string(best1 + 1)
                            + " with linespoints pt 7 ps 0.3 title 'Solution path', '' using " + std::to_string(best1) + ":"
                            + std::to_string(best1 + 1) + " every ::" + std::to_string(spec.framework.total_iterations - 1)
                            + " with points pt 2 ps 2 lc rgb 'red' title 'Final'\n");
    }
    std::string analysis = header + "set multiplot layout 1," + std::string(d0 >= 2 ? "3" : "2")
                           + "\nset title 'Smoothed fitness'\nset logscale y\nplot '" + first_rel
                           + "/history.csv' using 1:3 with lines title 'Fitness', '" + first_rel
                           + "/smoothed.csv' using 1:2 with lines title 'Smoothed'\nunset logscale y\n";
    if (d0 >= 2) {
        analysis += "set title 'Visit density (dimensions 1, 2)'\nunset key\nplot '" + first_rel
                    + "/density.csv' matrix with image\nset key autotitle columnhead\n";
    }
    analysis += "set title 'Fitness histogram'\nplot '" + first_rel
                + "/fitness_distribution.csv' using (($1+$2)/2):3 with boxes title 'Count'\nunset multiplot\n";
    write_text_file(dir / "plot_analysis.gp", analysis);
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options)
{
    const fs::path base = options.output_override.value_or(spec.output_directory);
    const fs::path dir = base / spec.name;
    const std::string resolved = describe(spec);
    const fs::path manifest = dir / "experiment.yaml";
    if (fs::exists(manifest) && read_text_file(manifest) != resolved) {
        throw ValidationError(manifest.string(), std::nullopt,
                              "experiment '" + spec.name + "' already exists in " + base.string()
                                  + " with a different configuration");
    }
    fs::create_directories(dir);
    write_text_file(manifest, resolved);

    std::vector<Group> groups;
    for (std::size_t d : spec.problem.dimensions) {
        for (std::uint64_t seed : spec.seeds) {
            groups.push_back({d, seed});
        }
    }

    std::vector<std::vector<RunSummary>> results(groups.size());
    std::vector<std::exception_ptr> errors(groups.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < groups.size(); i = next.fetch_add(1)) {
            try {
                results[i] = run_group(spec, dir, groups[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
            if (options.log) {
                std::lock_guard lock(log_mutex);
                *options.log << "[" << spec.name << "] d=" << groups[i].dimension << " seed=" << groups[i].seed
                             << (errors[i] ? " failed" : " done") << '\n';
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, groups.size()));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    ExperimentResult result;
    result.directory = dir;
    for (auto& group : results) {
        for (auto& run : group) {
            result.runs.push_back(std::move(run));
        }
    }
    write_text_file(dir / "summary.csv", summary_csv(spec, result.runs));
    write_plot_scripts(spec, dir);
    return result;
}

std::vector<std::pair<fs::path, std::string>> list_experiments(const fs::path& directory)
{
    std::vector<std::pair<fs::path, std::string>> out;
    if (!fs::is_directory(directory)) {
        return out;
    }
    for (const auto& entry : fs::directory_iterator(directory)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml")) {
            try {
                out.emplace_back(entry.path(), load_spec(entry.path()).name);
            } catch (const ValidationError& e) {
                out.emplace_back(entry.path(), std::string("<invalid: ") + e.what() + ">");
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace dynopt::experiment
