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

#ifndef VMSCOUT_OPTIMIZER_HPP_
#define VMSCOUT_OPTIMIZER_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vmscout/dataset.hpp"
#include "vmscout/forest.hpp"
#include "vmscout/gp.hpp"

namespace vmscout {

/// One completed measurement: the vm, its objective value, and the low-level
/// metrics observed while it ran.
struct TrialEntry {
    std::string vm_name;
    double objective = 0.0;
    LowLevelProfile low_level;
};

/// The optimizer's accumulated observations D, in acquisition order with
/// initial samples first. A VM is never measured twice.
class TrialHistory {
public:
    void append(TrialEntry entry);
    bool contains(std::string_view vm_name) const;
    std::size_t size() const { return entries_.size(); }
    const std::vector<TrialEntry>& entries() const { return entries_; }
    double best_so_far() const;
    const TrialEntry& best_entry() const;

private:
    std::vector<TrialEntry> entries_;
    std::set<std::string, std::less<>> names_;
};

struct StoppingRule {
    enum class Kind { FixedBudget, EiFraction, PredictionDelta };

    Kind kind = Kind::FixedBudget;
    int budget = 0;          // FixedBudget: stop once this many measurements exist
    double fraction = 0.10;  // EiFraction: stop when max EI < fraction * |best|
    double theta = 1.1;      // PredictionDelta: stop when min_pred / best > theta
};

std::string_view stopping_kind_name(StoppingRule::Kind kind);

/// Acquisition-side numbers for the stopping decision at one step, in
/// original objective units.
struct StepDiagnostics {
    std::size_t measured = 0;
    std::size_t catalog_size = 0;
    double best_so_far = 0.0;
    std::optional<double> max_ei;
    std::optional<double> min_prediction;
};

/// True when the rule fires. FixedBudget: measured >= budget. EiFraction(q):
/// max_ei < q * |best_so_far|. PredictionDelta(theta): the surrogate's best
/// promise over unmeasured VMs is already worse than theta * best_so_far,
/// i.e. min_prediction / best_so_far > theta. Catalog exhaustion
/// (measured == catalog_size) always stops. Throws ConfigError when the rule
/// asks for a diagnostic the trace does not carry.
bool stopping_check(const StoppingRule& rule, const StepDiagnostics& diag);

enum class SearchMethod { Naive, Augmented, Hybrid, RandomSearch };
enum class InitStrategy { MaxMinDistance, UniformRandom, Explicit };
enum class FailPolicy { Raise, WorstCase };

std::string_view method_name(SearchMethod method);
SearchMethod method_from_name(std::string_view name);
std::string_view init_strategy_name(InitStrategy strategy);
InitStrategy init_strategy_from_name(std::string_view name);

struct GpOptions {
    Kernel kernel = Kernel::isotropic(KernelFamily::Matern52, kVmFeatureDim);
    double noise_variance = 1e-4;  // on standardized targets
    double ei_xi = 0.01;           // exploration margin on standardized targets
    bool length_scale_grid = false;
};

struct SearchConfig {
    SearchMethod method = SearchMethod::Naive;
    ObjectiveKind objective = ObjectiveKind::Time;
    GpOptions gp;
    ForestParams forest;
    bool include_self_pairs = true;
    StoppingRule stopping;
    int n_initial = 3;
    InitStrategy init_strategy = InitStrategy::UniformRandom;
    std::vector<std::string> init_vms;  // Explicit strategy only
    int switch_step = 0;                // Hybrid; 0 means n_initial + 2
    std::uint64_t seed = 0;
    FailPolicy fail_policy = FailPolicy::Raise;

    int effective_switch_step() const {
        return switch_step > 0 ? switch_step : n_initial + 2;
    }

    /// Full validation against a catalog size; throws ConfigError.
    void validate(std::size_t catalog_size) const;
};

struct SearchStep {
    int step_index = 0;  // 1-based measurement count
    std::string vm_name;
    double objective = 0.0;
    double best_so_far = 0.0;
    double acquisition_score = 0.0;  // EI or predicted objective; 0 for initials
    bool stopped = false;            // true on the final step of a stopped search
    // Augmented bookkeeping for the step that chose this vm (0 elsewhere).
    std::size_t pairwise_rows = 0;
    std::size_t prediction_queries = 0;
};

struct SearchTrace {
    std::vector<SearchStep> steps;
    std::string config_digest;
    std::string recommendation;
    double recommendation_objective = 0.0;
    std::string stop_reason;  // budget | ei_fraction | prediction_delta | exhausted
    StepDiagnostics stop_diagnostics;

    std::size_t measurements_used() const { return steps.size(); }
};

/// JSON serialization: step objects carry step_index, vm_name,
/// objective_value, best_so_far, acquisition_score and stopped; the document
/// adds config_digest, recommendation and the stop diagnostics.
std::string trace_to_json(const SearchTrace& trace);

struct Measurement {
    double objective = 0.0;
    LowLevelProfile low_level;
};

/// The black-box f: measures one VM, returning the objective value and the
/// low-level profile. Throws EvaluationFailure for failed pairs.
using Evaluator = std::function<Measurement(const std::string& vm_name)>;

Evaluator make_table_evaluator(const MeasurementTable& table,
                               std::string workload, ObjectiveKind objective);

/// Raised when an evaluation fails under FailPolicy::Raise; carries the
/// trace accumulated so far.
class SearchAborted : public Error {
public:
    SearchAborted(const std::string& message, SearchTrace partial)
        : Error(message), partial_trace(std::move(partial)) {}

    SearchTrace partial_trace;
};

/// Initial sample selection. MaxMinDistance greedily maximizes the minimum
/// pairwise distance over standardized features starting from a seed-chosen
/// VM; UniformRandom samples without replacement; Explicit validates
/// membership and preserves order.
std::vector<std::string> select_initial(const std::vector<VmSpec>& catalog,
                                        InitStrategy strategy, int n,
                                        std::uint64_t seed,
                                        const std::vector<std::string>& explicit_names = {});

/// Pairwise training set over measured VMs: one row per ordered (source,
/// destination) pair, features [feat(source) | low_level(source) |
/// feat(destination)], target = destination objective. Self-pairs included
/// unless disabled. Requires at least 2 measured VMs.
std::pair<std::vector<std::vector<double>>, std::vector<double>>
build_pairwise_training(const TrialHistory& history,
                        const std::vector<VmSpec>& catalog,
                        bool include_self_pairs = true);

/// Mean forest estimate per unmeasured VM, averaged over all measured
/// source contexts.
std::map<std::string, double> predict_unmeasured(
    const ForestModel& model, const TrialHistory& history,
    const std::vector<VmSpec>& catalog);

/// Runs the configured search to completion against the evaluator.
SearchTrace run_search(const Evaluator& evaluate,
                       const std::vector<VmSpec>& catalog,
                       const SearchConfig& config);

// Method-checked entry points.
SearchTrace run_naive_bo(const Evaluator& evaluate,
                         const std::vector<VmSpec>& catalog,
                         const SearchConfig& config);
SearchTrace run_augmented_bo(const Evaluator& evaluate,
                             const std::vector<VmSpec>& catalog,
                             const SearchConfig& config);
SearchTrace run_hybrid_bo(const Evaluator& evaluate,
                          const std::vector<VmSpec>& catalog,
                          const SearchConfig& config);
SearchTrace run_random_search(const Evaluator& evaluate,
                              const std::vector<VmSpec>& catalog,
                              const SearchConfig& config);

/// Per-feature standardization over the catalog, shared by the GP features
/// and MaxMinDistance sampling.
struct FeatureScaler {
    std::array<double, kVmFeatureDim> mean{};
    std::array<double, kVmFeatureDim> std{};

    static FeatureScaler fit(const std::vector<VmSpec>& catalog);
    std::vector<double> transform(const VmSpec& vm) const;
};

}  // namespace vmscout

#endif  // VMSCOUT_OPTIMIZER_HPP_
