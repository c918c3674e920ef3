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

#ifndef VMSCOUT_REPLAY_HPP_
#define VMSCOUT_REPLAY_HPP_

#include <functional>
#include <string>
#include <vector>

#include "vmscout/dataset.hpp"
#include "vmscout/optimizer.hpp"

namespace vmscout {

/// A labelled method under comparison.
struct MethodSpec {
    std::string label;
    SearchConfig config;
};

/// Replay plan: repeat r of every method runs with seed = base_seed + r, so
/// methods with the same init strategy share identical initial samples and
/// comparisons are paired.
struct ReplayPlan {
    const MeasurementTable* table = nullptr;
    std::vector<std::string> workload_ids;  // must be ids from the table
    std::vector<MethodSpec> methods;
    int n_repeats = 100;
    std::uint64_t base_seed = 0;
    int jobs = 1;  // replay cells are independent; output is order-invariant
};

enum class Region { I, II, III };

std::string_view region_name(Region region);

/// Region from the median measurements-to-optimal: <= ceil(n/3) is I,
/// <= ceil(2n/3) is II, else III.
Region classify_region(double median_measurements_to_optimal,
                       std::size_t catalog_size);

struct Distribution {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    std::vector<double> values;  // one per repeat, in repeat order

    static Distribution from_values(std::vector<double> values);
    double iqr() const { return q3 - q1; }
};

struct MethodSummary {
    std::string method_label;
    // First step whose measurement hits the workload's true optimum; right-
    // censored to catalog size + 1 when the search stopped without it.
    Distribution measurements_to_optimal;
    // Measurements consumed until the method's own stopping rule fired.
    Distribution measurements_used;
    // Recommended objective divided by the table optimum (>= 1).
    Distribution final_normalized_performance;
    Region region = Region::I;
};

struct WorkloadSummary {
    std::string workload_id;
    std::vector<MethodSummary> methods;

    const MethodSummary& method(std::string_view label) const;
};

using TraceSink = std::function<void(
    const std::string& workload, const std::string& method_label, int repeat,
    const SearchTrace& trace)>;

/// Runs every (workload, method, repeat) cell and aggregates. A trace sink,
/// when given, receives every completed trace (called from the aggregation
/// thread in deterministic order).
std::vector<WorkloadSummary> run_replay(const ReplayPlan& plan,
                                        const TraceSink& sink = nullptr);

struct CdfPoint {
    int measurements = 0;
    double cumulative_pct = 0.0;
};

/// Step CDF over 1..catalog_size of per-workload median measurements-to-
/// optimal; censored medians never accumulate.
std::vector<CdfPoint> search_cost_cdf(const std::vector<WorkloadSummary>& summaries,
                                      std::string_view method_label,
                                      std::size_t catalog_size);

struct ComparisonPoint {
    std::string workload_id;
    double search_cost_reduction_pct = 0.0;     // positive: b searches cheaper
    double performance_improvement_pct = 0.0;   // positive: b recommends better
};

/// Per-workload paired comparison on median measurements_used and median
/// final normalized performance; (0, 0) means identical outcomes.
std::vector<ComparisonPoint> compare_methods(
    const std::vector<WorkloadSummary>& summaries_a, std::string_view label_a,
    const std::vector<WorkloadSummary>& summaries_b, std::string_view label_b);

struct SweepRow {
    double threshold = 0.0;
    std::string region;  // "I", "II", "III" or "all"
    double mean_search_cost = 0.0;
    double mean_normalized_performance = 0.0;
    int workload_count = 0;
};

/// Threshold sweep for EiFraction (Naive) or PredictionDelta (Augmented/
/// Hybrid). Workloads are assigned to regions by a FixedBudget baseline
/// replay of the same method, then each threshold contributes one row per
/// region plus an "all" aggregate.
std::vector<SweepRow> sweep_stopping(const ReplayPlan& plan,
                                     const SearchConfig& method,
                                     const std::vector<double>& thresholds);

std::string summaries_to_json(const std::vector<WorkloadSummary>& summaries);
std::string summaries_to_csv(const std::vector<WorkloadSummary>& summaries);
std::string cdf_to_csv(const std::vector<CdfPoint>& points,
                       std::string_view method_label);
std::string comparison_to_csv(const std::vector<ComparisonPoint>& points);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace vmscout

#endif  // VMSCOUT_REPLAY_HPP_
