// Copyright 2026 The vmscout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vmscout/cli.hpp"

#include <fstream>
#include <ostream>

#include "vmscout/config.hpp"
#include "vmscout/dataset.hpp"
#include "vmscout/replay.hpp"
#include "vmscout/synthetic.hpp"
#include "vmscout/text.hpp"

namespace vmscout {
namespace {

int guard(std::ostream& console, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const ConfigError& e) {
        console << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DataError& e) {
        console << "data error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        console << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

// Refuses to clobber existing files unless --force was given.
void write_output(const std::filesystem::path& path, const std::string& content,
                  bool force) {
    if (!force && std::filesystem::exists(path))
        throw ConfigError("output file exists (use --force): " + path.string());
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write output file: " + path.string());
    out << content;
}

RunSettings load_settings(const CliOptions& options) {
    const KeyValues file =
        options.config.empty() ? KeyValues{} : load_key_values(options.config);
    return parse_run_settings(file, parse_overrides(options.overrides));
}

std::vector<std::string> selected_workloads(const RunSettings& settings,
                                            const MeasurementTable& table) {
    return settings.workloads.empty() ? table.workloads() : settings.workloads;
}

std::string trace_file_name(const std::string& workload, int repeat) {
    return "trace_" + workload + "_r" + std::to_string(repeat) + ".json";
}

}  // namespace

int cmd_run(const CliOptions& options, std::ostream& console) {
    return guard(console, [&] {
        const RunSettings settings = load_settings(options);
        const MeasurementTable table = load_table(options.table);

        ReplayPlan plan;
        plan.table = &table;
        plan.workload_ids = selected_workloads(settings, table);
        plan.methods = {{std::string(method_name(settings.search.method)),
                         settings.search}};
        plan.n_repeats = settings.n_repeats;
        plan.base_seed = settings.base_seed;
        plan.jobs = options.jobs;

        std::vector<std::pair<std::filesystem::path, std::string>> files;
        const TraceSink sink = [&](const std::string& workload,
                                   const std::string&, int repeat,
                                   const SearchTrace& trace) {
            files.emplace_back(options.out / trace_file_name(workload, repeat),
                               trace_to_json(trace));
        };
        const auto summaries = run_replay(plan, sink);

        for (const auto& [path, content] : files)
            write_output(path, content, options.force);
        write_output(options.out / "summary.csv", summaries_to_csv(summaries),
                     options.force);
        write_output(options.out / "summary.json", summaries_to_json(summaries),
                     options.force);
        console << "ran " << plan.methods.front().label << " on "
                << plan.workload_ids.size() << " workload(s) x "
                << plan.n_repeats << " repeat(s); outputs in "
                << options.out.string() << "\n";
    });
}

int cmd_compare(const CliOptions& options, std::ostream& console) {
    return guard(console, [&] {
        CliOptions options_a = options;
        const RunSettings settings_a = load_settings(options_a);
        CliOptions options_b = options;
        options_b.config = options.config_b;
        const RunSettings settings_b = load_settings(options_b);

        if (settings_a.n_repeats != settings_b.n_repeats ||
            settings_a.base_seed != settings_b.base_seed ||
            settings_a.workloads != settings_b.workloads)
            throw ConfigError(
                "compare requires paired seeds: workloads, n_repeats and "
                "base_seed must match across configs");

        const MeasurementTable table = load_table(options.table);

        std::string label_a{method_name(settings_a.search.method)};
        std::string label_b{method_name(settings_b.search.method)};
        if (label_a == label_b) {
            label_a += "_a";
            label_b += "_b";
        }

        ReplayPlan plan;
        plan.table = &table;
        plan.workload_ids = selected_workloads(settings_a, table);
        plan.methods = {{label_a, settings_a.search}, {label_b, settings_b.search}};
        plan.n_repeats = settings_a.n_repeats;
        plan.base_seed = settings_a.base_seed;
        plan.jobs = options.jobs;

        const auto summaries = run_replay(plan);
        const auto points = compare_methods(summaries, label_a, summaries, label_b);
        write_output(options.out / "comparison.csv", comparison_to_csv(points),
                     options.force);

        int wins = 0, ties = 0, tradeoffs = 0, losses = 0;
        for (const auto& p : points) {
            const double cr = p.search_cost_reduction_pct;
            const double pi = p.performance_improvement_pct;
            if (cr == 0.0 && pi == 0.0)
                ++ties;
            else if (cr >= 0.0 && pi >= 0.0)
                ++wins;
            else if (cr <= 0.0 && pi <= 0.0)
                ++losses;
            else
                ++tradeoffs;
        }
        console << label_b << " vs " << label_a << ": " << wins << " win, "
                << ties << " tie, " << tradeoffs << " trade-off, " << losses
                << " loss (of " << points.size() << " workloads)\n";
    });
}

int cmd_sweep(const CliOptions& options, std::ostream& console) {
    return guard(console, [&] {
        KeyValues file =
            options.config.empty() ? KeyValues{} : load_key_values(options.config);
        KeyValues overrides = parse_overrides(options.overrides);
        std::vector<double> thresholds = {0.9, 1.0, 1.1, 1.2, 1.25, 1.3};
        auto extract = [&](KeyValues& kv) {
            for (auto it = kv.begin(); it != kv.end();) {
                if (it->first == "thresholds") {
                    thresholds.clear();
                    for (const auto& part : split(it->second, ',')) {
                        double v = 0.0;
                        if (!parse_double(part, v))
                            throw ConfigError("thresholds: '" + part +
                                              "' is not a number");
                        thresholds.push_back(v);
                    }
                    it = kv.erase(it);
                } else {
                    ++it;
                }
            }
        };
        extract(file);
        extract(overrides);

        const RunSettings settings = parse_run_settings(file, overrides);
        const MeasurementTable table = load_table(options.table);

        ReplayPlan plan;
        plan.table = &table;
        plan.workload_ids = selected_workloads(settings, table);
        plan.n_repeats = settings.n_repeats;
        plan.base_seed = settings.base_seed;
        plan.jobs = options.jobs;

        const auto rows = sweep_stopping(plan, settings.search, thresholds);
        write_output(options.out / "sweep.csv", sweep_to_csv(rows), options.force);
        console << "swept " << thresholds.size() << " threshold(s) over "
                << plan.workload_ids.size() << " workload(s); outputs in "
                << options.out.string() << "\n";
    });
}

int cmd_gen_synthetic(const CliOptions& options, std::ostream& console) {
    return guard(console, [&] {
        KeyValues kv =
            options.config.empty() ? KeyValues{} : load_key_values(options.config);
        for (auto& kvp : parse_overrides(options.overrides)) kv.push_back(kvp);

        std::string suite;
        std::uint64_t seed = 0;
        double noise_pct = 0.0;
        for (const auto& [key, value] : kv) {
            if (key == "suite") {
                suite = value;
            } else if (key == "seed") {
                long long s = 0;
                if (!parse_int(value, s))
                    throw ConfigError("seed: '" + value + "' is not an integer");
                seed = static_cast<std::uint64_t>(s);
            } else if (key == "noise_pct") {
                if (!parse_double(value, noise_pct))
                    throw ConfigError("noise_pct: '" + value + "' is not a number");
            } else {
                throw ConfigError("unknown config key: " + key);
            }
        }
        MeasurementTable table = [&] {
            if (suite == "smooth9") return smooth9_table(seed, noise_pct);
            if (suite == "cliff9") return cliff9_table(seed, noise_pct);
            throw ConfigError("suite must be smooth9 or cliff9");
        }();
        const auto path = options.out / (suite + ".csv");
        write_output(path, table_to_csv(table), options.force);
        console << "wrote " << path.string() << " (" << table.catalog().size()
                << " VMs x " << table.workloads().size() << " workloads)\n";
    });
}

int cmd_validate(const CliOptions& options, std::ostream& console) {
    return guard(console, [&] {
        const MeasurementTable table = load_table(options.table);
        console << "table: " << table.catalog().size() << " VMs, "
                << table.workloads().size() << " workloads, "
                << table.failure_count() << " failures\n";
        for (const auto& w : table.workloads()) {
            console << "  " << w
                    << ": best time = " << table.best_vm(w, ObjectiveKind::Time)
                    << ", best cost = " << table.best_vm(w, ObjectiveKind::Cost)
                    << "\n";
        }
    });
}

}  // namespace vmscout
