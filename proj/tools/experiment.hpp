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
#ifndef DYNOPT_TOOLS_EXPERIMENT_HPP
#define DYNOPT_TOOLS_EXPERIMENT_HPP

#include "dynopt/adaptation.hpp"
#include "dynopt/baselines.hpp"
#include "dynopt/framework.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynopt::experiment {

/// Spec validation failure, optionally anchored to a line of the spec file.
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& file, std::optional<int> line, const std::string& message);
    std::optional<int> line() const noexcept { return line_; }

private:
    std::optional<int> line_;
};

struct ProblemSettings {
    std::vector<std::size_t> dimensions{10};
    double lower = 0.0;
    double upper = 1.0;
    ChangeSchedule schedule;

    friend bool operator==(const ProblemSettings&, const ProblemSettings&) = default;
};

struct StrategyEntry {
    std::string label;
    AdaptationStrategy strategy;

    friend bool operator==(const StrategyEntry&, const StrategyEntry&) = default;
};

enum class BaselineKind { dual_annealing, basinhopping };

struct BaselineEntry {
    std::string label;
    BaselineKind kind = BaselineKind::dual_annealing;
    AnnealConfig anneal;
    BasinConfig basin;
    /// nullopt: match the largest evaluation count of the adaptive runs
    /// sharing the same dimension and seed.
    std::optional<std::uint64_t> evaluation_budget;

    friend bool operator==(const BaselineEntry&, const BaselineEntry&) = default;
};

struct AnalysisSettings {
    std::size_t density_grid = 20;
    std::size_t histogram_bins = 30;
    std::size_t smoothing_window = 21;
    std::size_t heatmap_stride = 10;

    friend bool operator==(const AnalysisSettings&, const AnalysisSettings&) = default;
};

struct ExperimentSpec {
    std::string name;
    std::filesystem::path output_directory = "out";
    std::vector<std::uint64_t> seeds;
    ProblemSettings problem;
    /// Shared settings; strategy and seed are overridden per run.
    FrameworkConfig framework;
    std::vector<StrategyEntry> strategies;
    std::vector<BaselineEntry> baselines;
    AnalysisSettings analysis;

    friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

/// Parses and validates a YAML spec. Missing keys take their defaults.
ExperimentSpec parse_spec(const std::string& text, const std::string& file_name = "<spec>");
ExperimentSpec load_spec(const std::filesystem::path& path);

/// Fully resolved spec as YAML; parse_spec(describe(s)) == s.
std::string describe(const ExperimentSpec& spec);

struct RunSummary {
    std::string label;
    std::string kind;
    std::size_t dimension = 0;
    std::uint64_t seed = 0;
    bool valid = true;
    std::string error;
    double end_error = 0.0;
    std::vector<RecoveryTime> recoveries;
    std::uint64_t evaluations = 0;
    std::uint64_t sensing_evaluations = 0;
    std::filesystem::path directory;
};

struct ExperimentResult {
    std::filesystem::path directory;
    std::vector<RunSummary> runs;
    bool all_valid() const;
};

struct RunOptions {
    std::optional<std::filesystem::path> output_override;
    std::size_t jobs = 1;
    std::ostream* log = nullptr;
};

/// Executes every (competitor x dimension x seed) run and writes histories,
/// analysis matrices, summary.csv and gnuplot scripts. Throws
/// ValidationError before writing anything when the output directory already
/// holds a different experiment of the same name.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// Bundled or user spec files in a directory, with their experiment names.
std::vector<std::pair<std::filesystem::path, std::string>> list_experiments(const std::filesystem::path& directory);

std::filesystem::path run_directory(const std::filesystem::path& experiment_dir, const std::string& label,
                                    std::size_t dimension, std::uint64_t seed);

} // namespace dynopt::experiment

#endif
