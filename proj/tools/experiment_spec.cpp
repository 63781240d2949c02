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

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace dynopt::experiment {

ValidationError::ValidationError(const std::string& file, std::optional<int> line, const std::string& message)
    : std::runtime_error(file + (line ? ":" + std::to_string(*line) : std::string()) + ": " + message), line_(line)
{
}

namespace {

/// Typed accessors over a YAML mapping that report failures at the node's line.
class Reader {
public:
    explicit Reader(std::string file) : file_(std::move(file)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const
    {
        std::optional<int> line;
        if (node.IsDefined() && node.Mark().line >= 0) {
            line = node.Mark().line + 1;
        }
        throw ValidationError(file_, line, message);
    }

    void expect_map(const YAML::Node& node, const std::string& what) const
    {
        if (!node.IsMap()) {
            fail(node, what + " must be a mapping");
        }
    }

    void check_keys(const YAML::Node& map, std::initializer_list<const char*> allowed, const std::string& where) const
    {
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
                fail(kv.first, "unknown key '" + key + "' in " + where);
            }
        }
    }

    template <typename T>
    T scalar(const YAML::Node& node, const std::string& key) const
    {
        if (!node.IsScalar()) {
            fail(node, key + " must be a scalar");
        }
        try {
            return node.as<T>();
        } catch (const YAML::BadConversion&) {
            fail(node, "cannot read " + key + " from '" + node.Scalar() + "'");
        }
    }

    template <typename T>
    void read(const YAML::Node& map, const char* key, T& out) const
    {
        if (const auto node = map[key]) {
            if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
                const auto text = scalar<std::string>(node, key);
                if (!text.empty() && text.front() == '-' && std::is_unsigned_v<T>) {
                    fail(node, std::string(key) + " must be non-negative");
                }
            }
            out = scalar<T>(node, key);
        }
    }

    const std::string& file() const { return file_; }

private:
    std::string file_;
};

bool is_keyword(const YAML::Node& node, const char* word)
{
    return node.IsScalar() && node.Scalar() == word;
}

MutationFactor read_mutation(const Reader& r, const YAML::Node& node)
{
    if (node.IsSequence()) {
        if (node.size() != 2) {
            r.fail(node, "mutation_factor range needs exactly two values [lo, hi]");
        }
        return MutationFactor::dither(r.scalar<double>(node[0], "mutation_factor"),
                                      r.scalar<double>(node[1], "mutation_factor"));
    }
    return MutationFactor::fixed(r.scalar<double>(node, "mutation_factor"));
}

/// Key of \p map that a validator message refers to, or \p map itself.
YAML::Node anchor_for(const YAML::Node& map, const std::string& message)
{
    static const std::pair<const char*, const char*> aliases[] = {
        {"mutation factor", "mutation_factor"},
        {"dither", "mutation_factor"},
        {"sensor tolerance", "sensor_tolerance"},
    };
    if (!map.IsMap()) {
        return map;
    }
    std::string best;
    for (const auto& kv : map) {
        const auto key = kv.first.Scalar();
        if (key.size() > best.size() && message.find(key) != std::string::npos) {
            best = key;
        }
    }
    if (best.empty()) {
        for (const auto& [phrase, key] : aliases) {
            if (message.find(phrase) != std::string::npos && map[key]) {
                best = key;
                break;
            }
        }
    }
    return best.empty() ? map : map[best];
}

template <typename Fn>
void checked(const Reader& r, const YAML::Node& node, Fn&& fn)
{
    try {
        fn();
    } catch (const ConfigError& e) {
        r.fail(anchor_for(node, e.what()), e.what());
    } catch (const DimensionError& e) {
        r.fail(anchor_for(node, e.what()), e.what());
    }
}

std::optional<std::uint64_t> read_budget(const Reader& r, const YAML::Node& node)
{
    if (!node || is_keyword(node, "auto")) {
        return std::nullopt;
    }
    const auto text = r.scalar<std::string>(node, "evaluation_budget");
    if (!text.empty() && text.front() == '-') {
        r.fail(node, "evaluation_budget must be positive or 'auto'");
    }
    return r.scalar<std::uint64_t>(node, "evaluation_budget");
}

bool valid_name(const std::string& name)
{
    return !name.empty() && name != "." && name != ".."
           && std::all_of(name.begin(), name.end(), [](char c) {
                  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
              });
}

} // namespace

ExperimentSpec parse_spec(const std::string& text, const std::string& file_name)
{
    const Reader r(file_name);
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ValidationError(file_name, e.mark.line >= 0 ? std::optional<int>(e.mark.line + 1) : std::nullopt, e.msg);
    }
    r.expect_map(root, "experiment spec");
    r.check_keys(root, {"name", "output_directory", "seeds", "problem", "framework", "de", "strategies", "baselines", "analysis"},
                 "spec");

    ExperimentSpec spec;
    if (!root["name"]) {
        r.fail(root, "missing required key 'name'");
    }
    spec.name = r.scalar<std::string>(root["name"], "name");
    if (!valid_name(spec.name)) {
        r.fail(root["name"], "name must be non-empty and use only letters, digits, '_', '-' or '.'");
    }
    if (const auto out = root["output_directory"]) {
        spec.output_directory = r.scalar<std::string>(out, "output_directory");
    }

    const auto seeds = root["seeds"];
    if (!seeds || !seeds.IsSequence() || seeds.size() == 0) {
        r.fail(seeds ? seeds : root, "seeds must be a non-empty list of integers");
    }
    for (const auto& s : seeds) {
        const auto t = r.scalar<std::string>(s, "seed");
        if (!t.empty() && t.front() == '-') {
            r.fail(s, "seeds must be non-negative");
        }
        spec.seeds.push_back(r.scalar<std::uint64_t>(s, "seed"));
    }

    if (const auto p = root["problem"]) {
        r.expect_map(p, "problem");
        r.check_keys(p, {"dimension", "dimensions", "lower", "upper", "change_frequency", "change_severity", "total_changes_cap"},
                     "problem");
        if (p["dimension"] && p["dimensions"]) {
            r.fail(p["dimensions"], "give either dimension or dimensions, not both");
        }
        if (const auto d = p["dimension"]) {
            spec.problem.dimensions = {r.scalar<std::size_t>(d, "dimension")};
        }
        if (const auto d = p["dimensions"]) {
            spec.problem.dimensions.clear();
            if (d.IsSequence()) {
                for (const auto& x : d) {
                    spec.problem.dimensions.push_back(r.scalar<std::size_t>(x, "dimensions"));
                }
            } else {
                spec.problem.dimensions.push_back(r.scalar<std::size_t>(d, "dimensions"));
            }
        }
        if (spec.problem.dimensions.empty()) {
            r.fail(p, "dimensions must not be empty");
        }
        for (std::size_t d : spec.problem.dimensions) {
            if (d < 1) {
                r.fail(p["dimensions"] ? p["dimensions"] : p["dimension"], "every dimension must be >= 1");
            }
        }
        r.read(p, "lower", spec.problem.lower);
        r.read(p, "upper", spec.problem.upper);
        if (!(spec.problem.lower < spec.problem.upper)) {
            r.fail(p["upper"] ? p["upper"] : p, "lower must be < upper");
        }
        r.read(p, "change_frequency", spec.problem.schedule.change_frequency);
        r.read(p, "change_severity", spec.problem.schedule.change_severity);
        if (const auto cap = p["total_changes_cap"]; cap && !is_keyword(cap, "none")) {
            spec.problem.schedule.total_changes_cap = r.scalar<std::int64_t>(cap, "total_changes_cap");
        }
        checked(r, p, [&] { spec.problem.schedule.validate(); });
    }

    auto& fw = spec.framework;
    if (const auto f = root["framework"]) {
        r.expect_map(f, "framework");
        r.check_keys(f, {"total_iterations", "sensor_tolerance", "sentinel_count", "feedback_enabled", "recovery_target",
                         "recovery_band", "snapshot_stride", "record_population_fitness"},
                     "framework");
        r.read(f, "total_iterations", fw.total_iterations);
        r.read(f, "sensor_tolerance", fw.sensor.tolerance);
        r.read(f, "sentinel_count", fw.sensor.sentinel_count);
        r.read(f, "feedback_enabled", fw.feedback_enabled);
        r.read(f, "recovery_target", fw.recovery_target);
        r.read(f, "recovery_band", fw.recovery_band);
        r.read(f, "snapshot_stride", fw.history.snapshot_stride);
        r.read(f, "record_population_fitness", fw.history.record_population_fitness);
        checked(r, f, [&] {
            if (fw.total_iterations < 1) {
                throw ConfigError("total_iterations must be >= 1");
            }
            fw.sensor.validate();
            if (fw.recovery_target < 0) {
                throw ConfigError("recovery_target must be >= 0");
            }
            if (!(fw.recovery_band >= 1.0)) {
                throw ConfigError("recovery_band must be >= 1");
            }
            if (fw.history.snapshot_stride < 1) {
                throw ConfigError("snapshot_stride must be >= 1");
            }
        });
    }

    if (const auto d = root["de"]) {
        r.expect_map(d, "de");
        r.check_keys(d, {"population_size", "mutation_factor", "crossover_rate", "variant", "max_generations", "eval_threads"},
                     "de");
        if (const auto n = d["population_size"]; n && !is_keyword(n, "auto")) {
            fw.de.population_size = r.scalar<std::size_t>(n, "population_size");
            if (fw.de.population_size == 0) {
                r.fail(n, "population_size must be >= 4 or 'auto'");
            }
        }
        if (const auto m = d["mutation_factor"]) {
            fw.de.mutation = read_mutation(r, m);
        }
        r.read(d, "crossover_rate", fw.de.crossover_rate);
        if (const auto v = d["variant"]) {
            checked(r, v, [&] { fw.de.variant = parse_de_variant(r.scalar<std::string>(v, "variant")); });
        }
        r.read(d, "max_generations", fw.de.max_generations);
        r.read(d, "eval_threads", fw.de.eval_threads);
        checked(r, d, [&] { fw.de.validate(); });
    }

    std::set<std::string> labels;
    const auto unique_label = [&](const YAML::Node& node, const std::string& label) {
        if (!valid_name(label)) {
            r.fail(node, "label '" + label + "' must use only letters, digits, '_', '-' or '.'");
        }
        if (!labels.insert(label).second) {
            r.fail(node, "duplicate competitor label '" + label + "'");
        }
    };

    if (const auto list = root["strategies"]) {
        if (!list.IsSequence()) {
            r.fail(list, "strategies must be a list");
        }
        for (const auto& s : list) {
            r.expect_map(s, "strategy entry");
            r.check_keys(s, {"label", "kind", "reinit_fraction", "local_search_budget", "local_search_variant",
                             "mutation_factor", "crossover_rate"},
                         "strategy entry");
            if (!s["kind"]) {
                r.fail(s, "strategy entry needs a kind");
            }
            StrategyEntry entry;
            checked(r, s["kind"], [&] { entry.strategy.kind = parse_adaptation_kind(r.scalar<std::string>(s["kind"], "kind")); });
            entry.label = s["label"] ? r.scalar<std::string>(s["label"], "label") : std::string(to_string(entry.strategy.kind));
            unique_label(s["label"] ? s["label"] : s, entry.label);
            auto& st = entry.strategy;
            r.read(s, "reinit_fraction", st.reinit_fraction);
            r.read(s, "local_search_budget", st.local_search_budget);
            if (const auto v = s["local_search_variant"]) {
                checked(r, v, [&] { st.local_search_config.variant = parse_de_variant(r.scalar<std::string>(v, "local_search_variant")); });
            }
            if (const auto m = s["mutation_factor"]) {
                st.local_search_config.mutation = read_mutation(r, m);
            }
            r.read(s, "crossover_rate", st.local_search_config.crossover_rate);
            st.local_search_config.eval_threads = fw.de.eval_threads;
            checked(r, s, [&] { st.validate(); });
            spec.strategies.push_back(std::move(entry));
        }
    }

    if (const auto list = root["baselines"]) {
        if (!list.IsSequence()) {
            r.fail(list, "baselines must be a list");
        }
        for (const auto& b : list) {
            r.expect_map(b, "baseline entry");
            if (!b["kind"]) {
                r.fail(b, "baseline entry needs a kind");
            }
            BaselineEntry entry;
            const auto kind = r.scalar<std::string>(b["kind"], "kind");
            if (kind == "dual_annealing") {
                entry.kind = BaselineKind::dual_annealing;
                r.check_keys(b, {"label", "kind", "initial_temperature", "cooling_exponent", "steps", "step_scale", "evaluation_budget"},
                             "dual_annealing entry");
                r.read(b, "initial_temperature", entry.anneal.initial_temperature);
                r.read(b, "cooling_exponent", entry.anneal.cooling_exponent);
                r.read(b, "steps", entry.anneal.steps);
                r.read(b, "step_scale", entry.anneal.step_scale);
                checked(r, b, [&] { entry.anneal.validate(); });
            } else if (kind == "basinhopping") {
                entry.kind = BaselineKind::basinhopping;
                r.check_keys(b, {"label", "kind", "hops", "perturbation_scale", "local_simplex_iterations", "evaluation_budget"},
                             "basinhopping entry");
                r.read(b, "hops", entry.basin.hops);
                r.read(b, "perturbation_scale", entry.basin.perturbation_scale);
                r.read(b, "local_simplex_iterations", entry.basin.local_simplex_iterations);
                checked(r, b, [&] { entry.basin.validate(); });
            } else {
                r.fail(b["kind"], "unknown baseline kind '" + kind + "' (expected dual_annealing or basinhopping)");
            }
            entry.evaluation_budget = read_budget(r, b["evaluation_budget"]);
            if (entry.evaluation_budget && *entry.evaluation_budget == 0) {
                r.fail(b["evaluation_budget"], "evaluation_budget must be positive or 'auto'");
            }
            entry.label = b["label"] ? r.scalar<std::string>(b["label"], "label") : kind;
            unique_label(b["label"] ? b["label"] : b, entry.label);
            spec.baselines.push_back(std::move(entry));
        }
    }

    if (spec.strategies.empty() && spec.baselines.empty()) {
        r.fail(root, "at least one strategy or baseline is required");
    }

    if (const auto a = root["analysis"]) {
        r.expect_map(a, "analysis");
        r.check_keys(a, {"density_grid", "histogram_bins", "smoothing_window", "heatmap_stride"}, "analysis");
        r.read(a, "density_grid", spec.analysis.density_grid);
        r.read(a, "histogram_bins", spec.analysis.histogram_bins);
        r.read(a, "smoothing_window", spec.analysis.smoothing_window);
        r.read(a, "heatmap_stride", spec.analysis.heatmap_stride);
        if (spec.analysis.density_grid < 2) {
            r.fail(a["density_grid"], "density_grid must be >= 2");
        }
        if (spec.analysis.histogram_bins < 1) {
            r.fail(a["histogram_bins"], "histogram_bins must be >= 1");
        }
        if (spec.analysis.smoothing_window % 2 == 0) {
            r.fail(a["smoothing_window"], "smoothing_window must be a positive odd integer");
        }
        if (spec.analysis.heatmap_stride < 1) {
            r.fail(a["heatmap_stride"], "heatmap_stride must be >= 1");
        }
    }
    return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError(path.string(), std::nullopt, "cannot read spec file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str(), path.string());
}

namespace {

std::string num(double v)
{
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

std::string mutation_text(const MutationFactor& m)
{
    return m.dithered() ? "[" + num(m.lo) + ", " + num(m.hi) + "]" : num(m.lo);
}

std::string budget_text(const std::optional<std::uint64_t>& b)
{
    return b ? std::to_string(*b) : "auto";
}

} // namespace

std::string describe(const ExperimentSpec& spec)
{
    std::ostringstream out;
    const auto& fw = spec.framework;
    out << "name: " << spec.name << '\n';
    out << "output_directory: " << quoted(spec.output_directory.string()) << '\n';
    out << "seeds: [";
    for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
        out << (i ? ", " : "") << spec.seeds[i];
    }
    out << "]\n";

    out << "problem:\n  dimensions: [";
    for (std::size_t i = 0; i < spec.problem.dimensions.size(); ++i) {
        out << (i ? ", " : "") << spec.problem.dimensions[i];
    }
    const auto& sch = spec.problem.schedule;
    out << "]\n  lower: " << num(spec.problem.lower) << "\n  upper: " << num(spec.problem.upper)
        << "\n  change_frequency: " << sch.change_frequency << "\n  change_severity: " << num(sch.change_severity)
        << "\n  total_changes_cap: " << (sch.total_changes_cap ? std::to_string(*sch.total_changes_cap) : "none") << '\n';

    out << "framework:\n  total_iterations: " << fw.total_iterations
        << "\n  sensor_tolerance: " << num(fw.sensor.tolerance) << "\n  sentinel_count: " << fw.sensor.sentinel_count
        << "\n  feedback_enabled: " << (fw.feedback_enabled ? "true" : "false")
        << "\n  recovery_target: " << fw.recovery_target << "\n  recovery_band: " << num(fw.recovery_band)
        << "\n  snapshot_stride: " << fw.history.snapshot_stride
        << "\n  record_population_fitness: " << (fw.history.record_population_fitness ? "true" : "false") << '\n';

    out << "de:\n  population_size: "
        << (fw.de.population_size == 0 ? std::string("auto") : std::to_string(fw.de.population_size))
        << "\n  mutation_factor: " << mutation_text(fw.de.mutation) << "\n  crossover_rate: " << num(fw.de.crossover_rate)
        << "\n  variant: " << to_string(fw.de.variant) << "\n  max_generations: " << fw.de.max_generations
        << "\n  eval_threads: " << fw.de.eval_threads << '\n';

    if (spec.strategies.empty()) {
        out << "strategies: []\n";
    } else {
        out << "strategies:\n";
        for (const auto& s : spec.strategies) {
            const auto& st = s.strategy;
            out << "  - label: " << s.label << "\n    kind: " << to_string(st.kind)
                << "\n    reinit_fraction: " << num(st.reinit_fraction)
                << "\n    local_search_budget: " << st.local_search_budget
                << "\n    local_search_variant: " << to_string(st.local_search_config.variant)
                << "\n    mutation_factor: " << mutation_text(st.local_search_config.mutation)
                << "\n    crossover_rate: " << num(st.local_search_config.crossover_rate) << '\n';
        }
    }

    if (spec.baselines.empty()) {
        out << "baselines: []\n";
    } else {
        out << "baselines:\n";
        for (const auto& b : spec.baselines) {
            if (b.kind == BaselineKind::dual_annealing) {
                out << "  - label: " << b.label << "\n    kind: dual_annealing"
                    << "\n    initial_temperature: " << num(b.anneal.initial_temperature)
                    << "\n    cooling_exponent: " << num(b.anneal.cooling_exponent) << "\n    steps: " << b.anneal.steps
                    << "\n    step_scale: " << num(b.anneal.step_scale);
            } else {
                out << "  - label: " << b.label << "\n    kind: basinhopping\n    hops: " << b.basin.hops
                    << "\n    perturbation_scale: " << num(b.basin.perturbation_scale)
                    << "\n    local_simplex_iterations: " << b.basin.local_simplex_iterations;
            }
            out << "\n    evaluation_budget: " << budget_text(b.evaluation_budget) << '\n';
        }
    }

    out << "analysis:\n  density_grid: " << spec.analysis.density_grid
        << "\n  histogram_bins: " << spec.analysis.histogram_bins
        << "\n  smoothing_window: " << spec.analysis.smoothing_window
        << "\n  heatmap_stride: " << spec.analysis.heatmap_stride << '\n';
    return out.str();
}

} // namespace dynopt::experiment
