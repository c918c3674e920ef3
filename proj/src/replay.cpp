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

#include "vmscout/replay.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include <json.hpp>

#include "vmscout/stats.hpp"
#include "vmscout/text.hpp"

namespace vmscout {

std::string_view region_name(Region region) {
    switch (region) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
    }
    return "?";
}

Region classify_region(double median_measurements_to_optimal,
                       std::size_t catalog_size) {
    const double t1 = std::ceil(static_cast<double>(catalog_size) / 3.0);
    const double t2 = std::ceil(2.0 * static_cast<double>(catalog_size) / 3.0);
    if (median_measurements_to_optimal <= t1) return Region::I;
    if (median_measurements_to_optimal <= t2) return Region::II;
    return Region::III;
}

Distribution Distribution::from_values(std::vector<double> values) {
    Distribution d;
    d.median = quantile(values, 0.5);
    d.q1 = quantile(values, 0.25);
    d.q3 = quantile(values, 0.75);
    d.values = std::move(values);
    return d;
}

const MethodSummary& WorkloadSummary::method(std::string_view label) const {
    for (const auto& m : methods)
        if (m.method_label == label) return m;
    throw StateError("no summary for method " + std::string(label) +
                     " on workload " + workload_id);
}

namespace {

struct CellResult {
    double measurements_to_optimal = 0.0;
    double measurements_used = 0.0;
    double normalized_performance = 0.0;
    SearchTrace trace;  // kept only when a sink consumes it
};

void validate_plan(const ReplayPlan& plan) {
    if (plan.table == nullptr) throw ConfigError("replay plan has no table");
    if (plan.methods.empty()) throw ConfigError("replay plan has no methods");
    if (plan.n_repeats < 1) throw ConfigError("n_repeats must be >= 1");
    if (plan.workload_ids.empty()) throw ConfigError("replay plan selects no workloads");
    std::set<std::string> labels;
    for (const auto& m : plan.methods) {
        if (!labels.insert(m.label).second)
            throw ConfigError("duplicate method label: " + m.label);
        m.config.validate(plan.table->catalog().size());
    }
    const auto& known = plan.table->workloads();
    for (const auto& w : plan.workload_ids) {
        if (std::find(known.begin(), known.end(), w) == known.end())
            throw DataError("replay workload not in table: " + w);
        for (const auto& vm : plan.table->catalog()) {
            if (!plan.table->is_failed(w, vm.name)) continue;
            for (const auto& m : plan.methods)
                if (m.config.fail_policy == FailPolicy::Raise)
                    throw DataError("replay error: pair (" + w + ", " + vm.name +
                                    ") is failed and method " + m.label +
                                    " has fail_policy = raise");
        }
    }
}

CellResult run_cell(const MeasurementTable& table, const std::string& workload,
                    const MethodSpec& method, std::uint64_t seed,
                    bool keep_trace) {
    SearchConfig config = method.config;
    config.seed = seed;
    const Evaluator evaluate =
        make_table_evaluator(table, workload, config.objective);
    SearchTrace trace = run_search(evaluate, table.catalog(), config);

    const double optimal = table.best_objective(workload, config.objective);
    CellResult cell;
    cell.measurements_used = static_cast<double>(trace.measurements_used());
    cell.measurements_to_optimal =
        static_cast<double>(table.catalog().size() + 1);
    for (const auto& step : trace.steps) {
        if (step.objective == optimal) {
            cell.measurements_to_optimal = static_cast<double>(step.step_index);
            break;
        }
    }
    cell.normalized_performance = trace.recommendation_objective / optimal;
    if (keep_trace) cell.trace = std::move(trace);
    return cell;
}

}  // namespace

std::vector<WorkloadSummary> run_replay(const ReplayPlan& plan,
                                        const TraceSink& sink) {
    validate_plan(plan);
    const MeasurementTable& table = *plan.table;
    const std::size_t n_workloads = plan.workload_ids.size();
    const std::size_t n_methods = plan.methods.size();
    const std::size_t n_repeats = static_cast<std::size_t>(plan.n_repeats);
    const std::size_t n_cells = n_workloads * n_methods * n_repeats;
    const bool keep_traces = static_cast<bool>(sink);

    std::vector<CellResult> cells(n_cells);
    auto cell_index = [&](std::size_t w, std::size_t m, std::size_t r) {
        return (w * n_methods + m) * n_repeats + r;
    };

    const int jobs = std::max(1, plan.jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_cells) break;
            const std::size_t w = i / (n_methods * n_repeats);
            const std::size_t m = (i / n_repeats) % n_methods;
            const std::size_t r = i % n_repeats;
            cells[i] = run_cell(table, plan.workload_ids[w], plan.methods[m],
                                plan.base_seed + r, keep_traces);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<WorkloadSummary> summaries;
    summaries.reserve(n_workloads);
    for (std::size_t w = 0; w < n_workloads; ++w) {
        WorkloadSummary summary;
        summary.workload_id = plan.workload_ids[w];
        for (std::size_t m = 0; m < n_methods; ++m) {
            std::vector<double> mto, used, perf;
            mto.reserve(n_repeats);
            for (std::size_t r = 0; r < n_repeats; ++r) {
                const CellResult& cell = cells[cell_index(w, m, r)];
                mto.push_back(cell.measurements_to_optimal);
                used.push_back(cell.measurements_used);
                perf.push_back(cell.normalized_performance);
                if (sink)
                    sink(summary.workload_id, plan.methods[m].label,
                         static_cast<int>(r), cell.trace);
            }
            MethodSummary ms;
            ms.method_label = plan.methods[m].label;
            ms.measurements_to_optimal = Distribution::from_values(std::move(mto));
            ms.measurements_used = Distribution::from_values(std::move(used));
            ms.final_normalized_performance =
                Distribution::from_values(std::move(perf));
            ms.region = classify_region(ms.measurements_to_optimal.median,
                                        table.catalog().size());
            summary.methods.push_back(std::move(ms));
        }
        summaries.push_back(std::move(summary));
    }
    return summaries;
}

std::vector<CdfPoint> search_cost_cdf(
    const std::vector<WorkloadSummary>& summaries, std::string_view method_label,
    std::size_t catalog_size) {
    if (summaries.empty()) throw StateError("search_cost_cdf: no summaries");
    std::vector<double> medians;
    medians.reserve(summaries.size());
    for (const auto& s : summaries)
        medians.push_back(s.method(method_label).measurements_to_optimal.median);
    std::vector<CdfPoint> points;
    points.reserve(catalog_size);
    for (std::size_t x = 1; x <= catalog_size; ++x) {
        const auto found = std::count_if(medians.begin(), medians.end(),
                                         [&](double m) { return m <= double(x); });
        points.push_back({static_cast<int>(x),
                          100.0 * static_cast<double>(found) /
                              static_cast<double>(medians.size())});
    }
    return points;
}

std::vector<ComparisonPoint> compare_methods(
    const std::vector<WorkloadSummary>& summaries_a, std::string_view label_a,
    const std::vector<WorkloadSummary>& summaries_b, std::string_view label_b) {
    auto ids = [](const std::vector<WorkloadSummary>& s) {
        std::set<std::string> out;
        for (const auto& w : s) out.insert(w.workload_id);
        return out;
    };
    if (ids(summaries_a) != ids(summaries_b))
        throw DataError("compare_methods: workload sets are not paired");

    std::vector<ComparisonPoint> points;
    points.reserve(summaries_a.size());
    for (const auto& a : summaries_a) {
        const auto& b = *std::find_if(
            summaries_b.begin(), summaries_b.end(),
            [&](const WorkloadSummary& s) { return s.workload_id == a.workload_id; });
        const MethodSummary& ma = a.method(label_a);
        const MethodSummary& mb = b.method(label_b);
        ComparisonPoint p;
        p.workload_id = a.workload_id;
        const double cost_a = ma.measurements_used.median;
        const double cost_b = mb.measurements_used.median;
        p.search_cost_reduction_pct = (cost_a - cost_b) / cost_a * 100.0;
        const double perf_a = ma.final_normalized_performance.median;
        const double perf_b = mb.final_normalized_performance.median;
        p.performance_improvement_pct = (perf_a - perf_b) / perf_a * 100.0;
        points.push_back(std::move(p));
    }
    return points;
}

std::vector<SweepRow> sweep_stopping(const ReplayPlan& plan,
                                     const SearchConfig& method,
                                     const std::vector<double>& thresholds) {
    if (thresholds.empty())
        throw ConfigError("sweep_stopping: empty threshold list");
    const bool delta_sweep =
        method.stopping.kind == StoppingRule::Kind::PredictionDelta;
    if (delta_sweep) {
        if (method.method != SearchMethod::Augmented &&
            method.method != SearchMethod::Hybrid)
            throw ConfigError(
                "prediction_delta sweeps need the augmented or hybrid method");
    } else if (method.stopping.kind == StoppingRule::Kind::EiFraction) {
        if (method.method != SearchMethod::Naive)
            throw ConfigError("ei_fraction sweeps need the naive method");
    } else {
        throw ConfigError("sweep_stopping: stopping must be prediction_delta "
                          "or ei_fraction");
    }
    if (plan.table == nullptr) throw ConfigError("sweep plan has no table");

    // Region assignment from an exhaustive baseline of the same method.
    ReplayPlan baseline_plan = plan;
    MethodSpec baseline{"baseline", method};
    baseline.config.stopping.kind = StoppingRule::Kind::FixedBudget;
    baseline.config.stopping.budget =
        static_cast<int>(plan.table->catalog().size());
    baseline_plan.methods = {baseline};
    const auto baseline_summaries = run_replay(baseline_plan);
    std::map<std::string, Region> regions;
    for (const auto& s : baseline_summaries)
        regions[s.workload_id] = s.methods.front().region;

    std::vector<SweepRow> rows;
    for (double threshold : thresholds) {
        ReplayPlan swept = plan;
        MethodSpec spec{"swept", method};
        if (delta_sweep)
            spec.config.stopping.theta = threshold;
        else
            spec.config.stopping.fraction = threshold;
        swept.methods = {spec};
        const auto summaries = run_replay(swept);

        auto emit = [&](const std::string& region_label, auto member_of) {
            std::vector<double> costs, perfs;
            for (const auto& s : summaries) {
                if (!member_of(regions.at(s.workload_id))) continue;
                const auto& m = s.methods.front();
                costs.push_back(m.measurements_used.median);
                perfs.push_back(m.final_normalized_performance.median);
            }
            if (costs.empty()) return;
            rows.push_back({threshold, region_label, mean(costs), mean(perfs),
                            static_cast<int>(costs.size())});
        };
        for (Region r : {Region::I, Region::II, Region::III})
            emit(std::string(region_name(r)), [r](Region x) { return x == r; });
        emit("all", [](Region) { return true; });
    }
    return rows;
}

std::string summaries_to_json(const std::vector<WorkloadSummary>& summaries) {
    nlohmann::json workloads = nlohmann::json::array();
    for (const auto& s : summaries) {
        nlohmann::json methods = nlohmann::json::array();
        for (const auto& m : s.methods) {
            auto dist = [](const Distribution& d) {
                nlohmann::json j;
                j["median"] = d.median;
                j["q1"] = d.q1;
                j["q3"] = d.q3;
                j["values"] = d.values;
                return j;
            };
            nlohmann::json jm;
            jm["method"] = m.method_label;
            jm["region"] = std::string(region_name(m.region));
            jm["measurements_to_optimal"] = dist(m.measurements_to_optimal);
            jm["measurements_used"] = dist(m.measurements_used);
            jm["final_normalized_performance"] =
                dist(m.final_normalized_performance);
            methods.push_back(std::move(jm));
        }
        nlohmann::json jw;
        jw["workload_id"] = s.workload_id;
        jw["methods"] = methods;
        workloads.push_back(std::move(jw));
    }
    nlohmann::json doc;
    doc["workloads"] = workloads;
    return doc.dump(2) + "\n";
}

std::string summaries_to_csv(const std::vector<WorkloadSummary>& summaries) {
    std::string out =
        "workload_id,method,region,mto_median,mto_q1,mto_q3,used_median,"
        "used_q1,used_q3,perf_median,perf_q1,perf_q3\n";
    for (const auto& s : summaries) {
        for (const auto& m : s.methods) {
            out += s.workload_id + ',' + m.method_label + ',' +
                   std::string(region_name(m.region));
            for (const Distribution* d :
                 {&m.measurements_to_optimal, &m.measurements_used,
                  &m.final_normalized_performance})
                out += ',' + double_to_string(d->median) + ',' +
                       double_to_string(d->q1) + ',' + double_to_string(d->q3);
            out += '\n';
        }
    }
    return out;
}

std::string cdf_to_csv(const std::vector<CdfPoint>& points,
                       std::string_view method_label) {
    std::string out = "x,cumulative_pct,method\n";
    for (const auto& p : points)
        out += std::to_string(p.measurements) + ',' +
               double_to_string(p.cumulative_pct) + ',' +
               std::string(method_label) + '\n';
    return out;
}

std::string comparison_to_csv(const std::vector<ComparisonPoint>& points) {
    std::string out = "workload_id,cost_reduction_pct,perf_improvement_pct\n";
    for (const auto& p : points)
        out += p.workload_id + ',' + double_to_string(p.search_cost_reduction_pct) +
               ',' + double_to_string(p.performance_improvement_pct) + '\n';
    return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "threshold,region,mean_search_cost,mean_normalized_performance,workloads\n";
    for (const auto& r : rows)
        out += double_to_string(r.threshold) + ',' + r.region + ',' +
               double_to_string(r.mean_search_cost) + ',' +
               double_to_string(r.mean_normalized_performance) + ',' +
               std::to_string(r.workload_count) + '\n';
    return out;
}

}  // namespace vmscout
