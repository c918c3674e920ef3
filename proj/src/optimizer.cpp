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

#include "vmscout/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "vmscout/config.hpp"
#include "vmscout/rng.hpp"

namespace vmscout {

void TrialHistory::append(TrialEntry entry) {
    if (!names_.insert(entry.vm_name).second)
        throw StateError("vm measured twice: " + entry.vm_name);
    entries_.push_back(std::move(entry));
}

bool TrialHistory::contains(std::string_view vm_name) const {
    return names_.find(vm_name) != names_.end();
}

double TrialHistory::best_so_far() const { return best_entry().objective; }

const TrialEntry& TrialHistory::best_entry() const {
    if (entries_.empty()) throw StateError("empty trial history");
    const TrialEntry* best = &entries_.front();
    for (const auto& e : entries_)
        if (e.objective < best->objective) best = &e;
    return *best;
}

std::string_view stopping_kind_name(StoppingRule::Kind kind) {
    switch (kind) {
        case StoppingRule::Kind::FixedBudget: return "fixed_budget";
        case StoppingRule::Kind::EiFraction: return "ei_fraction";
        case StoppingRule::Kind::PredictionDelta: return "prediction_delta";
    }
    return "?";
}

bool stopping_check(const StoppingRule& rule, const StepDiagnostics& diag) {
    if (diag.catalog_size > 0 && diag.measured >= diag.catalog_size)
        return true;  // catalog exhaustion always stops
    switch (rule.kind) {
        case StoppingRule::Kind::FixedBudget:
            return diag.measured >= static_cast<std::size_t>(rule.budget);
        case StoppingRule::Kind::EiFraction:
            if (!diag.max_ei)
                throw ConfigError(
                    "ei_fraction stopping asked of a trace without EI diagnostics");
            return *diag.max_ei < rule.fraction * std::abs(diag.best_so_far);
        case StoppingRule::Kind::PredictionDelta:
            if (!diag.min_prediction)
                throw ConfigError(
                    "prediction_delta stopping asked of a trace without "
                    "surrogate predictions");
            return *diag.min_prediction / diag.best_so_far > rule.theta;
    }
    throw StateError("unreachable stopping kind");
}

std::string_view method_name(SearchMethod method) {
    switch (method) {
        case SearchMethod::Naive: return "naive";
        case SearchMethod::Augmented: return "augmented";
        case SearchMethod::Hybrid: return "hybrid";
        case SearchMethod::RandomSearch: return "random";
    }
    return "?";
}

SearchMethod method_from_name(std::string_view name) {
    if (name == "naive") return SearchMethod::Naive;
    if (name == "augmented") return SearchMethod::Augmented;
    if (name == "hybrid") return SearchMethod::Hybrid;
    if (name == "random") return SearchMethod::RandomSearch;
    throw ConfigError("unknown method: " + std::string(name));
}

std::string_view init_strategy_name(InitStrategy strategy) {
    switch (strategy) {
        case InitStrategy::MaxMinDistance: return "maxmin";
        case InitStrategy::UniformRandom: return "uniform";
        case InitStrategy::Explicit: return "explicit";
    }
    return "?";
}

InitStrategy init_strategy_from_name(std::string_view name) {
    if (name == "maxmin") return InitStrategy::MaxMinDistance;
    if (name == "uniform") return InitStrategy::UniformRandom;
    if (name == "explicit") return InitStrategy::Explicit;
    throw ConfigError("unknown init_strategy: " + std::string(name));
}

void SearchConfig::validate(std::size_t catalog_size) const {
    if (catalog_size < 2) throw ConfigError("catalog needs at least 2 VMs");

    if (init_strategy == InitStrategy::Explicit) {
        if (init_vms.size() < 2 || init_vms.size() > catalog_size)
            throw ConfigError("explicit initial list must name 2.." +
                              std::to_string(catalog_size) + " VMs");
        if (n_initial != static_cast<int>(init_vms.size()))
            throw ConfigError("n_initial conflicts with the explicit initial list");
    } else {
        if (n_initial < 2 || n_initial > static_cast<int>(catalog_size))
            throw ConfigError("n_initial must be in 2.." +
                              std::to_string(catalog_size));
        if (!init_vms.empty())
            throw ConfigError("init_vms requires init_strategy = explicit");
    }

    if (method == SearchMethod::Hybrid && effective_switch_step() < n_initial)
        throw ConfigError("hybrid switch_step must be >= n_initial");

    switch (stopping.kind) {
        case StoppingRule::Kind::FixedBudget:
            if (stopping.budget < n_initial)
                throw ConfigError("budget must be >= n_initial");
            if (stopping.budget > static_cast<int>(catalog_size))
                throw ConfigError("budget must be <= catalog size");
            break;
        case StoppingRule::Kind::EiFraction:
            if (!(stopping.fraction > 0.0) || !(stopping.fraction < 1.0))
                throw ConfigError("ei_fraction must be in (0, 1)");
            if (method == SearchMethod::Augmented ||
                method == SearchMethod::RandomSearch)
                throw ConfigError("ei_fraction stopping requires a GP surrogate");
            if (method == SearchMethod::Hybrid &&
                effective_switch_step() < static_cast<int>(catalog_size))
                throw ConfigError(
                    "ei_fraction stopping is unavailable after the hybrid "
                    "switch; raise switch_step to at least the catalog size");
            break;
        case StoppingRule::Kind::PredictionDelta:
            if (!(stopping.theta > 0.0))
                throw ConfigError("prediction_delta theta must be > 0");
            if (method == SearchMethod::Naive || method == SearchMethod::RandomSearch)
                throw ConfigError(
                    "prediction_delta stopping requires the augmented (or "
                    "hybrid) surrogate");
            break;
    }

    if (method == SearchMethod::Naive || method == SearchMethod::Hybrid)
        gp.kernel.validate(kVmFeatureDim);
    if (method == SearchMethod::Augmented || method == SearchMethod::Hybrid)
        forest.validate();
    if (!(gp.noise_variance >= 0.0))
        throw ConfigError("noise_variance must be >= 0");
    if (gp.ei_xi < 0.0) throw ConfigError("ei_xi must be >= 0");
}

FeatureScaler FeatureScaler::fit(const std::vector<VmSpec>& catalog) {
    if (catalog.empty()) throw StateError("cannot fit scaler on empty catalog");
    FeatureScaler scaler;
    const double n = static_cast<double>(catalog.size());
    for (const auto& vm : catalog) {
        const auto f = vm.feature_vector();
        for (std::size_t d = 0; d < kVmFeatureDim; ++d) scaler.mean[d] += f[d];
    }
    for (std::size_t d = 0; d < kVmFeatureDim; ++d) scaler.mean[d] /= n;
    for (const auto& vm : catalog) {
        const auto f = vm.feature_vector();
        for (std::size_t d = 0; d < kVmFeatureDim; ++d) {
            const double c = f[d] - scaler.mean[d];
            scaler.std[d] += c * c;
        }
    }
    for (std::size_t d = 0; d < kVmFeatureDim; ++d) {
        scaler.std[d] = std::sqrt(scaler.std[d] / n);
        if (scaler.std[d] <= 0.0) scaler.std[d] = 1.0;
    }
    return scaler;
}

std::vector<double> FeatureScaler::transform(const VmSpec& vm) const {
    const auto f = vm.feature_vector();
    std::vector<double> z(kVmFeatureDim);
    for (std::size_t d = 0; d < kVmFeatureDim; ++d)
        z[d] = (f[d] - mean[d]) / std[d];
    return z;
}

std::vector<std::string> select_initial(
    const std::vector<VmSpec>& catalog, InitStrategy strategy, int n,
    std::uint64_t seed, const std::vector<std::string>& explicit_names) {
    const auto catalog_size = catalog.size();

    if (strategy == InitStrategy::Explicit) {
        std::set<std::string> seen;
        for (const auto& name : explicit_names) {
            if (std::none_of(catalog.begin(), catalog.end(),
                             [&](const VmSpec& vm) { return vm.name == name; }))
                throw ConfigError("explicit initial vm not in catalog: " + name);
            if (!seen.insert(name).second)
                throw ConfigError("explicit initial vm repeated: " + name);
        }
        if (static_cast<int>(explicit_names.size()) != n)
            throw ConfigError("explicit initial list does not match n");
        return explicit_names;
    }

    if (n < 2 || static_cast<std::size_t>(n) > catalog_size)
        throw ConfigError("initial sample size must be in 2..catalog size");

    Rng rng(seed);
    std::vector<std::string> out;
    out.reserve(n);

    if (strategy == InitStrategy::UniformRandom) {
        std::vector<std::size_t> idx(catalog_size);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (int i = 0; i < n; ++i) {
            const std::size_t j = i + rng.uniform_index(catalog_size - i);
            std::swap(idx[i], idx[j]);
            out.push_back(catalog[idx[i]].name);
        }
        return out;
    }

    // MaxMinDistance: greedy farthest-point selection on standardized
    // features, seeded by a random first VM; lowest index breaks ties.
    const FeatureScaler scaler = FeatureScaler::fit(catalog);
    std::vector<std::vector<double>> z;
    z.reserve(catalog_size);
    for (const auto& vm : catalog) z.push_back(scaler.transform(vm));

    std::vector<bool> chosen(catalog_size, false);
    std::vector<std::size_t> picks{rng.uniform_index(catalog_size)};
    chosen[picks.front()] = true;
    while (picks.size() < static_cast<std::size_t>(n)) {
        std::size_t best = catalog_size;
        double best_dist = -1.0;
        for (std::size_t i = 0; i < catalog_size; ++i) {
            if (chosen[i]) continue;
            double min_dist = std::numeric_limits<double>::infinity();
            for (std::size_t c : picks) {
                double d2 = 0.0;
                for (std::size_t k = 0; k < kVmFeatureDim; ++k) {
                    const double diff = z[i][k] - z[c][k];
                    d2 += diff * diff;
                }
                min_dist = std::min(min_dist, d2);
            }
            if (min_dist > best_dist) {
                best_dist = min_dist;
                best = i;
            }
        }
        chosen[best] = true;
        picks.push_back(best);
    }
    for (std::size_t i : picks) out.push_back(catalog[i].name);
    return out;
}

namespace {

std::size_t catalog_index_of(const std::vector<VmSpec>& catalog,
                             std::string_view name) {
    for (std::size_t i = 0; i < catalog.size(); ++i)
        if (catalog[i].name == name) return i;
    throw StateError("measured vm missing from catalog: " + std::string(name));
}

std::vector<double> pair_features(const VmSpec& source,
                                  const LowLevelProfile& source_metrics,
                                  const VmSpec& destination) {
    std::vector<double> row;
    row.reserve(kVmFeatureDim + LowLevelProfile::kMetricCount + kVmFeatureDim);
    for (double v : source.feature_vector()) row.push_back(v);
    for (double v : source_metrics.as_array()) row.push_back(v);
    for (double v : destination.feature_vector()) row.push_back(v);
    return row;
}

}  // namespace

std::pair<std::vector<std::vector<double>>, std::vector<double>>
build_pairwise_training(const TrialHistory& history,
                        const std::vector<VmSpec>& catalog,
                        bool include_self_pairs) {
    if (history.size() < 2)
        throw StateError("pairwise training needs at least 2 measurements");
    const auto& entries = history.entries();
    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
    rows.reserve(entries.size() * entries.size());
    for (const auto& source : entries) {
        const VmSpec& source_vm = catalog[catalog_index_of(catalog, source.vm_name)];
        for (const auto& dest : entries) {
            if (!include_self_pairs && dest.vm_name == source.vm_name) continue;
            const VmSpec& dest_vm = catalog[catalog_index_of(catalog, dest.vm_name)];
            rows.push_back(pair_features(source_vm, source.low_level, dest_vm));
            targets.push_back(dest.objective);
        }
    }
    return {std::move(rows), std::move(targets)};
}

std::map<std::string, double> predict_unmeasured(
    const ForestModel& model, const TrialHistory& history,
    const std::vector<VmSpec>& catalog) {
    std::map<std::string, double> out;
    for (const auto& dest : catalog) {
        if (history.contains(dest.name)) continue;
        double sum = 0.0;
        for (const auto& source : history.entries()) {
            const VmSpec& source_vm =
                catalog[catalog_index_of(catalog, source.vm_name)];
            const auto row = pair_features(source_vm, source.low_level, dest);
            sum += forest_predict(model, row).first;
        }
        out[dest.name] = sum / static_cast<double>(history.size());
    }
    return out;
}

Evaluator make_table_evaluator(const MeasurementTable& table,
                               std::string workload, ObjectiveKind objective) {
    const MeasurementTable* t = &table;
    return [t, workload = std::move(workload), objective](
               const std::string& vm_name) -> Measurement {
        if (t->is_failed(workload, vm_name))
            throw EvaluationFailure("measurement failed for (" + workload +
                                    ", " + vm_name + ")");
        const MeasurementRecord& rec = t->record(workload, vm_name);
        return {objective_value(rec, t->vm(vm_name), objective), rec.low_level};
    };
}

namespace {

struct SearchState {
    const Evaluator& evaluate;
    const std::vector<VmSpec>& catalog;
    const SearchConfig& config;
    SearchTrace trace;
    TrialHistory history;

    void measure(const std::string& vm_name, double acquisition_score,
                 std::size_t pairwise_rows, std::size_t prediction_queries) {
        Measurement m;
        try {
            m = evaluate(vm_name);
        } catch (const EvaluationFailure& failure) {
            if (config.fail_policy == FailPolicy::Raise || history.size() == 0) {
                finalize("aborted");
                throw SearchAborted(failure.what(), trace);
            }
            double worst = 0.0;
            for (const auto& e : history.entries())
                worst = std::max(worst, e.objective);
            m.objective = 10.0 * worst;
            // OOM-shaped stand-in profile for the pairwise model.
            m.low_level = {5.0, 0.0, 0.0, 150.0, 0.0, 0.0};
        }
        history.append({vm_name, m.objective, m.low_level});
        SearchStep step;
        step.step_index = static_cast<int>(history.size());
        step.vm_name = vm_name;
        step.objective = m.objective;
        step.best_so_far = history.best_so_far();
        step.acquisition_score = acquisition_score;
        step.pairwise_rows = pairwise_rows;
        step.prediction_queries = prediction_queries;
        trace.steps.push_back(std::move(step));
    }

    void stop(const std::string& reason, const StepDiagnostics& diag) {
        trace.stop_reason = reason;
        trace.stop_diagnostics = diag;
        if (!trace.steps.empty() && reason != "exhausted")
            trace.steps.back().stopped = true;
        finalize(reason);
    }

    void finalize(const std::string&) {
        if (history.size() == 0) return;
        const TrialEntry& best = history.best_entry();
        trace.recommendation = best.vm_name;
        trace.recommendation_objective = best.objective;
    }
};

}  // namespace

SearchTrace run_search(const Evaluator& evaluate,
                       const std::vector<VmSpec>& catalog,
                       const SearchConfig& config) {
    config.validate(catalog.size());

    SearchState state{evaluate, catalog, config, {}, {}};
    state.trace.config_digest = config_digest(config);

    const FeatureScaler scaler = FeatureScaler::fit(catalog);
    std::vector<std::vector<double>> standardized;
    standardized.reserve(catalog.size());
    for (const auto& vm : catalog) standardized.push_back(scaler.transform(vm));

    const int n_initial = config.init_strategy == InitStrategy::Explicit
                              ? static_cast<int>(config.init_vms.size())
                              : config.n_initial;
    for (const auto& vm : select_initial(catalog, config.init_strategy,
                                         n_initial, config.seed, config.init_vms))
        state.measure(vm, 0.0, 0, 0);

    Rng pick_rng(mix_seed(config.seed, 0x706963ULL));

    while (true) {
        std::vector<std::size_t> unmeasured;
        for (std::size_t i = 0; i < catalog.size(); ++i)
            if (!state.history.contains(catalog[i].name)) unmeasured.push_back(i);

        StepDiagnostics diag;
        diag.measured = state.history.size();
        diag.catalog_size = catalog.size();
        diag.best_so_far = state.history.best_so_far();

        if (unmeasured.empty()) {
            state.stop("exhausted", diag);
            break;
        }
        if (config.stopping.kind == StoppingRule::Kind::FixedBudget &&
            stopping_check(config.stopping, diag)) {
            state.stop("budget", diag);
            break;
        }

        SearchMethod phase = config.method;
        if (phase == SearchMethod::Hybrid)
            phase = state.history.size() <
                            static_cast<std::size_t>(config.effective_switch_step())
                        ? SearchMethod::Naive
                        : SearchMethod::Augmented;

        std::string chosen;
        double score = 0.0;
        std::size_t pairwise_rows = 0;
        std::size_t prediction_queries = 0;

        if (phase == SearchMethod::Naive) {
            std::vector<std::vector<double>> inputs;
            std::vector<double> targets;
            inputs.reserve(state.history.size());
            for (const auto& e : state.history.entries()) {
                inputs.push_back(standardized[catalog_index_of(catalog, e.vm_name)]);
                targets.push_back(e.objective);
            }
            Kernel kernel = config.gp.kernel;
            if (config.gp.length_scale_grid)
                kernel = grid_refit_length_scale(inputs, targets, kernel,
                                                 config.gp.noise_variance,
                                                 kLengthScaleGrid);
            const GpModel model =
                gp_fit(inputs, targets, kernel, config.gp.noise_variance);
            const double best = state.history.best_so_far();
            const double xi = config.gp.ei_xi * model.target_std;

            double best_ei = -1.0;
            double min_mean = std::numeric_limits<double>::infinity();
            for (std::size_t i : unmeasured) {
                const auto [mean, variance] = gp_predict(model, standardized[i]);
                const double ei = expected_improvement(mean, variance, best, xi);
                min_mean = std::min(min_mean, mean);
                if (ei > best_ei) {
                    best_ei = ei;
                    chosen = catalog[i].name;
                }
            }
            score = best_ei;
            diag.max_ei = best_ei;
            diag.min_prediction = min_mean;
        } else if (phase == SearchMethod::Augmented) {
            auto [inputs, targets] = build_pairwise_training(
                state.history, catalog, config.include_self_pairs);
            pairwise_rows = inputs.size();
            const ForestModel model = forest_fit(inputs, targets, config.forest);
            const auto predictions =
                predict_unmeasured(model, state.history, catalog);
            prediction_queries = state.history.size() * unmeasured.size();

            double best_pred = std::numeric_limits<double>::infinity();
            for (std::size_t i : unmeasured) {
                const double pred = predictions.at(catalog[i].name);
                if (pred < best_pred) {
                    best_pred = pred;
                    chosen = catalog[i].name;
                }
            }
            score = best_pred;
            diag.min_prediction = best_pred;
        } else {  // RandomSearch
            chosen = catalog[unmeasured[pick_rng.uniform_index(unmeasured.size())]].name;
        }

        if (config.stopping.kind != StoppingRule::Kind::FixedBudget &&
            stopping_check(config.stopping, diag)) {
            state.stop(std::string(stopping_kind_name(config.stopping.kind)), diag);
            break;
        }

        state.measure(chosen, score, pairwise_rows, prediction_queries);
    }

    return state.trace;
}

namespace {

SearchTrace run_checked(const Evaluator& evaluate,
                        const std::vector<VmSpec>& catalog,
                        const SearchConfig& config, SearchMethod expected) {
    if (config.method != expected)
        throw ConfigError(std::string("config method is ") +
                          std::string(method_name(config.method)) +
                          ", expected " + std::string(method_name(expected)));
    return run_search(evaluate, catalog, config);
}

}  // namespace

SearchTrace run_naive_bo(const Evaluator& evaluate,
                         const std::vector<VmSpec>& catalog,
                         const SearchConfig& config) {
    return run_checked(evaluate, catalog, config, SearchMethod::Naive);
}

SearchTrace run_augmented_bo(const Evaluator& evaluate,
                             const std::vector<VmSpec>& catalog,
                             const SearchConfig& config) {
    return run_checked(evaluate, catalog, config, SearchMethod::Augmented);
}

SearchTrace run_hybrid_bo(const Evaluator& evaluate,
                          const std::vector<VmSpec>& catalog,
                          const SearchConfig& config) {
    return run_checked(evaluate, catalog, config, SearchMethod::Hybrid);
}

SearchTrace run_random_search(const Evaluator& evaluate,
                              const std::vector<VmSpec>& catalog,
                              const SearchConfig& config) {
    return run_checked(evaluate, catalog, config, SearchMethod::RandomSearch);
}

std::string trace_to_json(const SearchTrace& trace) {
    nlohmann::json doc;
    doc["config_digest"] = trace.config_digest;
    doc["measurements_used"] = trace.measurements_used();
    doc["recommendation"] = trace.recommendation;
    doc["recommendation_objective"] = trace.recommendation_objective;

    nlohmann::json stop;
    stop["reason"] = trace.stop_reason;
    stop["measured"] = trace.stop_diagnostics.measured;
    stop["best_so_far"] = trace.stop_diagnostics.best_so_far;
    if (trace.stop_diagnostics.max_ei) stop["max_ei"] = *trace.stop_diagnostics.max_ei;
    if (trace.stop_diagnostics.min_prediction) {
        stop["min_prediction"] = *trace.stop_diagnostics.min_prediction;
        if (trace.stop_diagnostics.best_so_far > 0.0)
            stop["prediction_delta"] = *trace.stop_diagnostics.min_prediction /
                                       trace.stop_diagnostics.best_so_far;
    }
    doc["stop"] = stop;

    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : trace.steps) {
        nlohmann::json s;
        s["step_index"] = step.step_index;
        s["vm_name"] = step.vm_name;
        s["objective_value"] = step.objective;
        s["best_so_far"] = step.best_so_far;
        s["acquisition_score"] = step.acquisition_score;
        s["stopped"] = step.stopped;
        steps.push_back(std::move(s));
    }
    doc["steps"] = steps;
    return doc.dump(2) + "\n";
}

}  // namespace vmscout
