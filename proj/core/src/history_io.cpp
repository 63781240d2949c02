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
#include "dynopt/history_io.hpp"

#include "dynopt/error.hpp"
#include "dynopt/format.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace dynopt {

namespace {

using nlohmann::json;

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double to_double(std::string_view field, std::size_t line)
{
    double value = 0.0;
    if (!parse_double(field, value)) {
        throw FormatError("history.csv:" + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    }
    return value;
}

template <typename Int>
Int to_int(std::string_view field, std::size_t line)
{
    Int value{};
    const auto r = std::from_chars(field.data(), field.data() + field.size(), value);
    if (r.ec != std::errc() || r.ptr != field.data() + field.size()) {
        throw FormatError("history.csv:" + std::to_string(line) + ": bad integer '" + std::string(field) + "'");
    }
    return value;
}

constexpr std::size_t kFixedColumns = 7;

} // namespace

std::string history_csv(const RunHistory& history)
{
    const std::size_t d = history.dimension;
    std::string out = "t,changed,current_best,best_so_far,cumulative_best,mean_fitness,evaluations";
    for (std::size_t i = 0; i < d; ++i) {
        out += ",best_" + std::to_string(i);
    }
    for (std::size_t i = 0; i < d; ++i) {
        out += ",optimum_" + std::to_string(i);
    }
    out += '\n';
    for (const auto& row : history.rows) {
        out += std::to_string(row.t);
        out += row.change_flag ? ",1," : ",0,";
        out += format_double(row.current_best_fitness) + ',' + format_double(row.best_so_far_fitness) + ','
               + format_double(row.cumulative_best_fitness) + ',' + format_double(row.population_mean_fitness) + ','
               + std::to_string(row.evaluations);
        for (std::size_t i = 0; i < d; ++i) {
            out += ',';
            if (i < row.best_solution_snapshot.size()) {
                out += format_double(row.best_solution_snapshot[i]);
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            out += ',';
            if (i < row.optimum_snapshot.size()) {
                out += format_double(row.optimum_snapshot[i]);
            }
        }
        out += '\n';
    }
    return out;
}

std::string history_json(const RunHistory& history)
{
    json doc;
    doc["format"] = "dynopt-history";
    doc["version"] = 1;
    doc["label"] = history.label;
    doc["dimension"] = history.dimension;
    doc["lower"] = history.lower;
    doc["upper"] = history.upper;
    doc["snapshot_stride"] = history.options.snapshot_stride;
    doc["record_population_fitness"] = history.options.record_population_fitness;
    doc["config_fingerprint"] = history.config_fingerprint;
    doc["evaluation_count"] = history.evaluation_count;
    doc["sensing_evaluations"] = history.sensing_evaluations;
    doc["rows"] = history.rows.size();
    doc["valid"] = history.valid;
    doc["error"] = history.error;
    doc["final_best"] = {{"x", history.final_best.components()}, {"fitness", history.final_best_fitness}};
    json events = json::array();
    for (const auto& e : history.change_events) {
        events.push_back({{"detected_at", e.detected_at},
                          {"drift_magnitude", e.drift_magnitude},
                          {"scheduled_at", e.scheduled_at ? json(*e.scheduled_at) : json(nullptr)}});
    }
    doc["change_events"] = std::move(events);
    json snapshots = json::array();
    for (const auto& s : history.population_snapshots) {
        snapshots.push_back({{"t", s.t}, {"fitness", s.fitness}});
    }
    doc["population_snapshots"] = std::move(snapshots);
    return doc.dump(2) + '\n';
}

RunHistory parse_history(std::string_view csv, std::string_view json_text)
{
    RunHistory history;
    json doc;
    try {
        doc = json::parse(json_text);
        if (doc.at("format").get<std::string>() != "dynopt-history") {
            throw FormatError("history.json: unexpected format tag");
        }
        history.label = doc.at("label").get<std::string>();
        history.dimension = doc.at("dimension").get<std::size_t>();
        history.lower = doc.at("lower").get<std::vector<double>>();
        history.upper = doc.at("upper").get<std::vector<double>>();
        history.options.snapshot_stride = doc.at("snapshot_stride").get<std::size_t>();
        history.options.record_population_fitness = doc.at("record_population_fitness").get<bool>();
        history.config_fingerprint = doc.at("config_fingerprint").get<std::string>();
        history.evaluation_count = doc.at("evaluation_count").get<std::uint64_t>();
        history.sensing_evaluations = doc.at("sensing_evaluations").get<std::uint64_t>();
        history.valid = doc.at("valid").get<bool>();
        history.error = doc.at("error").get<std::string>();
        history.final_best = SolutionVector(doc.at("final_best").at("x").get<std::vector<double>>());
        history.final_best_fitness = doc.at("final_best").at("fitness").get<double>();
        for (const auto& e : doc.at("change_events")) {
            ChangeEvent event;
            event.detected_at = e.at("detected_at").get<Iteration>();
            event.drift_magnitude = e.at("drift_magnitude").get<double>();
            if (!e.at("scheduled_at").is_null()) {
                event.scheduled_at = e.at("scheduled_at").get<Iteration>();
            }
            history.change_events.push_back(event);
        }
        for (const auto& s : doc.at("population_snapshots")) {
            history.population_snapshots.push_back({s.at("t").get<Iteration>(), s.at("fitness").get<std::vector<double>>()});
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("history.json: ") + e.what());
    }

    const std::size_t d = history.dimension;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < csv.size()) {
        std::size_t end = csv.find('\n', start);
        if (end == std::string_view::npos) {
            end = csv.size();
        }
        const std::string_view line = csv.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line_no == 1 || line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != kFixedColumns + 2 * d) {
            throw FormatError("history.csv:" + std::to_string(line_no) + ": expected "
                              + std::to_string(kFixedColumns + 2 * d) + " columns, got " + std::to_string(fields.size()));
        }
        IterationRecord row;
        row.t = to_int<Iteration>(fields[0], line_no);
        row.change_flag = fields[1] == "1";
        row.current_best_fitness = to_double(fields[2], line_no);
        row.best_so_far_fitness = to_double(fields[3], line_no);
        row.cumulative_best_fitness = to_double(fields[4], line_no);
        row.population_mean_fitness = to_double(fields[5], line_no);
        row.evaluations = to_int<std::uint64_t>(fields[6], line_no);
        std::vector<double> best;
        std::vector<double> optimum;
        for (std::size_t i = 0; i < d; ++i) {
            const auto f = fields[kFixedColumns + i];
            if (!f.empty()) {
                best.push_back(to_double(f, line_no));
            }
            const auto o = fields[kFixedColumns + d + i];
            if (!o.empty()) {
                optimum.push_back(to_double(o, line_no));
            }
        }
        row.best_solution_snapshot = SolutionVector(std::move(best));
        row.optimum_snapshot = SolutionVector(std::move(optimum));
        history.rows.push_back(std::move(row));
    }
    if (history.rows.size() != doc.at("rows").get<std::size_t>()) {
        throw FormatError("history.csv: row count disagrees with history.json");
    }
    return history;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError("cannot write " + path.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void write_history(const RunHistory& history, const std::filesystem::path& directory)
{
    std::filesystem::create_directories(directory);
    write_text_file(directory / "history.csv", history_csv(history));
    write_text_file(directory / "history.json", history_json(history));
}

RunHistory read_history(const std::filesystem::path& directory)
{
    return parse_history(read_text_file(directory / "history.csv"), read_text_file(directory / "history.json"));
}

std::string count_matrix_csv(const CountMatrix& matrix)
{
    std::string out;
    for (const auto& row : matrix) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) {
                out += ',';
            }
            out += std::to_string(row[j]);
        }
        out += '\n';
    }
    return out;
}

std::string real_matrix_csv(const std::vector<std::vector<double>>& matrix)
{
    std::string out;
    for (const auto& row : matrix) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) {
                out += ',';
            }
            out += format_double(row[j]);
        }
        out += '\n';
    }
    return out;
}

std::string histogram_csv(const Histogram& histogram)
{
    std::string out = "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
        out += format_double(histogram.edges[b]) + ',' + format_double(histogram.edges[b + 1]) + ','
               + std::to_string(histogram.counts[b]) + '\n';
    }
    return out;
}

std::string series_csv(std::span<const double> values, std::span<const Iteration> times)
{
    if (values.size() != times.size()) {
        throw DimensionError("series_csv: values and times differ in length");
    }
    std::string out = "t,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += std::to_string(times[i]) + ',' + format_double(values[i]) + '\n';
    }
    return out;
}

} // namespace dynopt
