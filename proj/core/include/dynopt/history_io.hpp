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
#ifndef DYNOPT_HISTORY_IO_HPP
#define DYNOPT_HISTORY_IO_HPP

#include "dynopt/metrics.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dynopt {

// history.csv, one row per iteration:
//   t,changed,current_best,best_so_far,cumulative_best,mean_fitness,evaluations,
//   best_0..best_{D-1},optimum_0..optimum_{D-1}
// best_k for k >= 2 is empty on rows outside the snapshot stride.
// Reals use 17 significant digits.
//
// history.json carries everything else: label, geometry, snapshot options,
// config_fingerprint, evaluation counts, change_events, final_best,
// population_snapshots, validity.

std::string history_csv(const RunHistory& history);
std::string history_json(const RunHistory& history);

/// Rebuilds a history from the two files' contents. Throws FormatError.
RunHistory parse_history(std::string_view csv, std::string_view json);

void write_history(const RunHistory& history, const std::filesystem::path& directory);
RunHistory read_history(const std::filesystem::path& directory);

std::string count_matrix_csv(const CountMatrix& matrix);
std::string real_matrix_csv(const std::vector<std::vector<double>>& matrix);
/// Columns: bin_lo,bin_hi,count.
std::string histogram_csv(const Histogram& histogram);
/// Columns: t,value.
std::string series_csv(std::span<const double> values, std::span<const Iteration> times);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace dynopt

#endif
