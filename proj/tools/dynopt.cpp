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

#include <CLI11.hpp>

#include <iostream>
#include <thread>

#ifndef DYNOPT_BUNDLED_EXPERIMENTS
#define DYNOPT_BUNDLED_EXPERIMENTS "experiments"
#endif

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;

} // namespace

int main(int argc, char** argv)
{
    namespace ex = dynopt::experiment;

    CLI::App app{"dynopt: dynamic optimization experiment runner"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_dir;
    std::size_t jobs = 1;
    bool verbose = false;
    std::string list_dir = DYNOPT_BUNDLED_EXPERIMENTS;

    auto* run_cmd = app.add_subcommand("run", "Execute every run of an experiment spec");
    run_cmd->add_option("spec", spec_path, "Experiment spec (YAML)")->required();
    run_cmd->add_option("--out", out_dir, "Override the spec's output_directory");
    run_cmd->add_option("--jobs", jobs, "Parallel (dimension, seed) groups")->check(CLI::PositiveNumber);
    run_cmd->add_flag("--verbose,-v", verbose, "Log progress to stderr");

    auto* describe_cmd = app.add_subcommand("describe", "Print the fully resolved spec");
    describe_cmd->add_option("spec", spec_path, "Experiment spec (YAML)")->required();

    auto* list_cmd = app.add_subcommand("list", "List experiment specs in a directory");
    list_cmd->add_option("dir", list_dir, "Directory to scan (defaults to the bundled specs)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }

    try {
        if (*describe_cmd) {
            std::cout << ex::describe(ex::load_spec(spec_path));
            return kOk;
        }
        if (*list_cmd) {
            for (const auto& [path, name] : ex::list_experiments(list_dir)) {
                std::cout << name << '\t' << path.string() << '\n';
            }
            return kOk;
        }

        const auto spec = ex::load_spec(spec_path);
        ex::RunOptions options;
        if (!out_dir.empty()) {
            options.output_override = out_dir;
        }
        options.jobs = jobs;
        options.log = verbose ? &std::cerr : nullptr;
        const auto result = ex::run_experiment(spec, options);
        int status = kOk;
        for (const auto& r : result.runs) {
            if (!r.valid) {
                std::cerr << "run failed: " << r.label << " d=" << r.dimension << " seed=" << r.seed << ": " << r.error
                          << '\n';
                status = kRuntime;
            }
        }
        std::cout << result.directory.string() << '\n';
        return status;
    } catch (const ex::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
}
