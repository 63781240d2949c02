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
#include "dynopt/error.hpp"
#include "dynopt/framework.hpp"
#include "dynopt/history_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

namespace dynopt {
namespace {

RunHistory sample_history(bool population)
{
    auto problem = make_moving_optimum_problem(6, BoxBounds::uniform(6, -1, 2), {40, 0.15, std::nullopt}, 5);
    FrameworkConfig config;
    config.total_iterations = 130;
    config.history.snapshot_stride = 7;
    config.history.record_population_fitness = population;
    auto h = run(problem, config);
    h.label = "sample";
    return h;
}

TEST(HistoryIO, CsvHeaderAndSparseSnapshots)
{
    const auto csv = history_csv(sample_history(false));
    const auto header = csv.substr(0, csv.find('\n'));
    EXPECT_EQ(header, "t,changed,current_best,best_so_far,cumulative_best,mean_fitness,evaluations,"
                      "best_0,best_1,best_2,best_3,best_4,best_5,"
                      "optimum_0,optimum_1,optimum_2,optimum_3,optimum_4,optimum_5");
    const auto second_row = csv.substr(csv.find('\n') + 1);
    const auto row2 = second_row.substr(second_row.find('\n') + 1);
    EXPECT_NE(row2.find(",,,,,"), std::string::npos);
}

TEST(HistoryIO, RoundTripIsExact)
{
    for (bool population : {false, true}) {
        const auto h = sample_history(population);
        const auto csv = history_csv(h);
        const auto json = history_json(h);
        const auto back = parse_history(csv, json);
        EXPECT_EQ(back, h);
        EXPECT_EQ(history_csv(back), csv);
        EXPECT_EQ(history_json(back), json);
    }
}

TEST(HistoryIO, RoundTripThroughFiles)
{
    const auto dir = std::filesystem::path(testing::TempDir()) / "dynopt_history_io";
    std::filesystem::remove_all(dir);
    const auto h = sample_history(true);
    write_history(h, dir);
    const auto back = read_history(dir);
    EXPECT_EQ(back, h);
    write_history(back, dir / "again");
    EXPECT_EQ(read_text_file(dir / "history.csv"), read_text_file(dir / "again" / "history.csv"));
    EXPECT_EQ(read_text_file(dir / "history.json"), read_text_file(dir / "again" / "history.json"));
    std::filesystem::remove_all(dir);
}

TEST(HistoryIO, InvalidRunsSurviveRoundTrip)
{
    RunHistory h;
    h.label = "broken";
    h.dimension = 2;
    h.lower = {0, 0};
    h.upper = {1, 1};
    h.valid = false;
    h.error = "evaluate: non-finite objective value";
    EXPECT_EQ(parse_history(history_csv(h), history_json(h)), h);
}

TEST(HistoryIO, MalformedInputRejected)
{
    const auto h = sample_history(false);
    const auto csv = history_csv(h);
    const auto json = history_json(h);
    EXPECT_THROW(parse_history("nonsense\n", json), FormatError);
    EXPECT_THROW(parse_history(csv, "{"), FormatError);
    EXPECT_THROW(parse_history(csv, "{\"format\": \"other\"}"), FormatError);
    // Last row loses its final field.
    const auto short_row = csv.substr(0, csv.rfind(',')) + "\n";
    EXPECT_THROW(parse_history(short_row, json), FormatError);
    auto bad_number = csv;
    bad_number.replace(bad_number.rfind(',') + 1, 1, "x");
    EXPECT_THROW(parse_history(bad_number, json), FormatError);
}

TEST(HistoryIO, MatrixExports)
{
    EXPECT_EQ(count_matrix_csv({{1, 2}, {3, 4}}), "1,2\n3,4\n");
    EXPECT_EQ(real_matrix_csv({{0.5, 0.1}}), "0.5,0.10000000000000001\n");
    Histogram hist{{0.0, 0.5, 1.0}, {3, 4}};
    EXPECT_EQ(histogram_csv(hist), "bin_lo,bin_hi,count\n0,0.5,3\n0.5,1,4\n");
    const std::vector<double> values{1.5, 2.0};
    const std::vector<Iteration> times{1, 2};
    EXPECT_EQ(series_csv(values, times), "t,value\n1,1.5\n2,2\n");
}

} // namespace
} // namespace dynopt
