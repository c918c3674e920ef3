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

#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <set>

#include "vmscout/config.hpp"
#include "vmscout/optimizer.hpp"
#include "vmscout/stats.hpp"
#include "vmscout/synthetic.hpp"

using namespace vmscout;

namespace {

SearchConfig base_config(SearchMethod method, ObjectiveKind objective,
                         int budget, std::uint64_t seed) {
    SearchConfig cfg;
    cfg.method = method;
    cfg.objective = objective;
    cfg.stopping.kind = StoppingRule::Kind::FixedBudget;
    cfg.stopping.budget = budget;
    cfg.seed = seed;
    cfg.forest.n_trees = 30;  // keep unit tests quick
    return cfg;
}

// Single-workload table whose time is smooth and monotone in one feature.
MeasurementTable monotone_table() {
    SyntheticSpec spec;
    spec.catalog = default_catalog();
    spec.workloads = {{"w", 600.0, 0.0, 0.0}};
    for (const auto& vm : spec.catalog)
        spec.speed_factors[vm.name] = static_cast<double>(vm.cores);
    return generate_synthetic(spec, 0);
}

std::vector<std::string> chosen_sequence(const SearchTrace& trace) {
    std::vector<std::string> names;
    for (const auto& s : trace.steps) names.push_back(s.vm_name);
    return names;
}

}  // namespace

TEST_CASE("trial history basics") {
    TrialHistory history;
    CHECK_THROWS_AS(history.best_so_far(), StateError);
    history.append({"a", 5.0, {}});
    history.append({"b", 3.0, {}});
    history.append({"c", 4.0, {}});
    CHECK(history.best_so_far() == 3.0);
    CHECK(history.best_entry().vm_name == "b");
    CHECK_THROWS_AS(history.append({"a", 1.0, {}}), StateError);
}

TEST_CASE("select_initial") {
    const auto catalog = default_catalog();
    SUBCASE("n equal to the catalog covers everything deterministically") {
        const auto all =
            select_initial(catalog, InitStrategy::MaxMinDistance, 18, 4);
        CHECK(all.size() == 18);
        CHECK(std::set<std::string>(all.begin(), all.end()).size() == 18);
        CHECK(all == select_initial(catalog, InitStrategy::MaxMinDistance, 18, 4));
    }
    SUBCASE("uniform sampling has no replacement and follows the seed") {
        const auto picks = select_initial(catalog, InitStrategy::UniformRandom, 6, 1);
        CHECK(picks.size() == 6);
        CHECK(std::set<std::string>(picks.begin(), picks.end()).size() == 6);
        CHECK(picks == select_initial(catalog, InitStrategy::UniformRandom, 6, 1));
        CHECK(picks != select_initial(catalog, InitStrategy::UniformRandom, 6, 2));
    }
    SUBCASE("the explicit seed set is honored in order") {
        const std::vector<std::string> wanted = {"c4.xlarge", "m4.large",
                                                 "r3.2xlarge"};
        CHECK(select_initial(catalog, InitStrategy::Explicit, 3, 0, wanted) ==
              wanted);
    }
    SUBCASE("explicit names must exist") {
        CHECK_THROWS_AS(select_initial(catalog, InitStrategy::Explicit, 2, 0,
                                       {"c4.xlarge", "nope"}),
                        ConfigError);
    }
    SUBCASE("identical features fall back to deterministic picks") {
        std::vector<VmSpec> clones;
        for (int i = 0; i < 3; ++i)
            clones.push_back({"vm" + std::to_string(i), 1, 2, 2.0, 1, 0.1});
        const auto picks =
            select_initial(clones, InitStrategy::MaxMinDistance, 2, 9);
        CHECK(picks.size() == 2);
        CHECK(picks == select_initial(clones, InitStrategy::MaxMinDistance, 2, 9));
    }
    SUBCASE("maxmin spreads across the feature space") {
        const auto picks =
            select_initial(catalog, InitStrategy::MaxMinDistance, 2, 3);
        // Any farthest pair differs in at least two encoded fields.
        const auto& a = catalog[0];
        int differing = 0;
        const VmSpec* first = nullptr;
        const VmSpec* second = nullptr;
        for (const auto& vm : catalog) {
            if (vm.name == picks[0]) first = &vm;
            if (vm.name == picks[1]) second = &vm;
        }
        (void)a;
        REQUIRE(first != nullptr);
        REQUIRE(second != nullptr);
        differing += first->cpu_family_code != second->cpu_family_code;
        differing += first->cores != second->cores;
        differing += first->ram_per_core_gb != second->ram_per_core_gb;
        differing += first->ebs_class != second->ebs_class;
        CHECK(differing >= 2);
    }
}

TEST_CASE("pairwise training layout") {
    const auto catalog = default_catalog();
    TrialHistory history;
    history.append({"c3.large", 10.0, {60, 5, 40, 30, 20, 3}});
    history.append({"m4.xlarge", 7.0, {70, 3, 70, 45, 22, 4}});
    history.append({"r4.2xlarge", 5.0, {80, 2, 120, 20, 25, 5}});

    SUBCASE("k measured gives k squared rows including self-pairs") {
        const auto [rows, targets] = build_pairwise_training(history, catalog);
        CHECK(rows.size() == 9);
        CHECK(targets.size() == 9);
        for (const auto& row : rows) CHECK(row.size() == 14);
        // Row (j, i) = [feat(j) | metrics(j) | feat(i)], target = y_i.
        const auto& r01 = rows[1];  // source c3.large, dest m4.xlarge
        const auto feat_src = catalog[0].feature_vector();   // c3.large
        const auto feat_dst = catalog[10].feature_vector();  // m4.xlarge
        CHECK(catalog[10].name == "m4.xlarge");
        for (int d = 0; d < 4; ++d) {
            CHECK(r01[d] == feat_src[d]);
            CHECK(r01[10 + d] == feat_dst[d]);
        }
        CHECK(r01[4] == 60.0);  // source cpu_user
        CHECK(targets[1] == 7.0);
    }
    SUBCASE("self-pair targets equal the source measurement") {
        const auto [rows, targets] = build_pairwise_training(history, catalog);
        CHECK(targets[0] == 10.0);  // (c3.large, c3.large)
        CHECK(targets[4] == 7.0);   // (m4.xlarge, m4.xlarge)
        CHECK(targets[8] == 5.0);   // (r4.2xlarge, r4.2xlarge)
    }
    SUBCASE("self-pairs can be excluded") {
        const auto [rows, targets] =
            build_pairwise_training(history, catalog, false);
        CHECK(rows.size() == 6);
    }
    SUBCASE("fewer than two measurements is a state error") {
        TrialHistory one;
        one.append({"c3.large", 10.0, {}});
        CHECK_THROWS_AS(build_pairwise_training(one, catalog), StateError);
    }
}

TEST_CASE("predict_unmeasured averages per-source estimates") {
    const auto catalog = default_catalog();
    TrialHistory history;
    history.append({"c3.large", 10.0, {60, 5, 40, 30, 20, 3}});
    history.append({"m4.xlarge", 7.0, {70, 3, 70, 45, 22, 4}});
    history.append({"r4.2xlarge", 5.0, {80, 2, 120, 20, 25, 5}});
    const auto [rows, targets] = build_pairwise_training(history, catalog);
    ForestParams params;
    params.n_trees = 20;
    const auto model = forest_fit(rows, targets, params);

    const auto predictions = predict_unmeasured(model, history, catalog);
    CHECK(predictions.size() == 15);  // 18 - 3 measured
    CHECK(predictions.count("c3.large") == 0);

    // Recompute one prediction directly: mean over the 3 source contexts.
    const auto& dest = catalog[catalog.size() - 1];
    REQUIRE(predictions.count(dest.name) == 1);
    double sum = 0.0;
    for (const auto& entry : history.entries()) {
        const VmSpec* src = nullptr;
        for (const auto& vm : catalog)
            if (vm.name == entry.vm_name) src = &vm;
        std::vector<double> row;
        for (double v : src->feature_vector()) row.push_back(v);
        for (double v : entry.low_level.as_array()) row.push_back(v);
        for (double v : dest.feature_vector()) row.push_back(v);
        sum += forest_predict(model, row).first;
    }
    CHECK(predictions.at(dest.name) == doctest::Approx(sum / 3.0).epsilon(1e-12));

    SUBCASE("single source is a passthrough") {
        TrialHistory one;
        one.append({"c3.large", 10.0, {60, 5, 40, 30, 20, 3}});
        const auto single = predict_unmeasured(model, one, catalog);
        const VmSpec& dst = catalog[5];
        std::vector<double> row;
        for (double v : catalog[0].feature_vector()) row.push_back(v);
        for (double v : one.entries().front().low_level.as_array())
            row.push_back(v);
        for (double v : dst.feature_vector()) row.push_back(v);
        CHECK(single.at(dst.name) == forest_predict(model, row).first);
    }
}

TEST_CASE("stopping_check") {
    StepDiagnostics diag;
    diag.measured = 5;
    diag.catalog_size = 18;
    diag.best_so_far = 10.0;

    SUBCASE("fixed budget boundary") {
        StoppingRule rule{StoppingRule::Kind::FixedBudget, 6, 0, 0};
        CHECK(!stopping_check(rule, diag));
        diag.measured = 6;
        CHECK(stopping_check(rule, diag));
    }
    SUBCASE("catalog exhaustion always stops") {
        StoppingRule rule{StoppingRule::Kind::EiFraction, 0, 0.1, 0};
        diag.measured = 18;
        CHECK(stopping_check(rule, diag));  // no EI diagnostics needed
    }
    SUBCASE("ei fraction") {
        StoppingRule rule{StoppingRule::Kind::EiFraction, 0, 0.10, 0};
        diag.max_ei = 0.0;
        CHECK(stopping_check(rule, diag));  // zero EI stops
        diag.max_ei = 1.1;
        CHECK(!stopping_check(rule, diag));  // 1.1 >= 0.1 * 10
        diag.max_ei = 0.9;
        CHECK(stopping_check(rule, diag));
    }
    SUBCASE("ei fraction without EI diagnostics is a config error") {
        StoppingRule rule{StoppingRule::Kind::EiFraction, 0, 0.10, 0};
        diag.max_ei.reset();
        CHECK_THROWS_AS(stopping_check(rule, diag), ConfigError);
    }
    SUBCASE("prediction delta boundary continues") {
        StoppingRule rule{StoppingRule::Kind::PredictionDelta, 0, 0, 1.0};
        diag.min_prediction = 10.0;  // delta exactly 1.0
        CHECK(!stopping_check(rule, diag));
    }
    SUBCASE("prediction delta stops once the promise is gone") {
        StoppingRule rule{StoppingRule::Kind::PredictionDelta, 0, 0, 1.1};
        diag.min_prediction = 10.5;  // delta 1.05: still promises within 10%
        CHECK(!stopping_check(rule, diag));
        diag.min_prediction = 11.5;  // delta 1.15 > 1.1
        CHECK(stopping_check(rule, diag));
    }
    SUBCASE("prediction delta without predictions is a config error") {
        StoppingRule rule{StoppingRule::Kind::PredictionDelta, 0, 0, 1.1};
        diag.min_prediction.reset();
        CHECK_THROWS_AS(stopping_check(rule, diag), ConfigError);
    }
}

TEST_CASE("config validation") {
    const auto catalog = default_catalog();
    SearchConfig cfg = base_config(SearchMethod::Naive, ObjectiveKind::Time, 18, 0);
    CHECK_NOTHROW(cfg.validate(catalog.size()));

    SUBCASE("n_initial bounds") {
        cfg.n_initial = 1;
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
        cfg.n_initial = 19;
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
    }
    SUBCASE("budget bounds") {
        cfg.stopping.budget = 2;  // below n_initial = 3
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
        cfg.stopping.budget = 19;
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
    }
    SUBCASE("rule and method pairing") {
        cfg.method = SearchMethod::Naive;
        cfg.stopping.kind = StoppingRule::Kind::PredictionDelta;
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
        cfg.method = SearchMethod::Augmented;
        cfg.stopping.kind = StoppingRule::Kind::EiFraction;
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
        cfg.method = SearchMethod::RandomSearch;
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
        cfg.method = SearchMethod::Hybrid;
        cfg.switch_step = 5;
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
        cfg.switch_step = 18;  // switch can never happen; EI stays defined
        CHECK_NOTHROW(cfg.validate(catalog.size()));
    }
    SUBCASE("hybrid switch below n_initial") {
        cfg.method = SearchMethod::Hybrid;
        cfg.switch_step = 2;
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
    }
    SUBCASE("explicit list consistency") {
        cfg.init_strategy = InitStrategy::Explicit;
        cfg.init_vms = {"c4.xlarge", "m4.large"};
        cfg.n_initial = 3;
        CHECK_THROWS_AS(cfg.validate(catalog.size()), ConfigError);
        cfg.n_initial = 2;
        CHECK_NOTHROW(cfg.validate(catalog.size()));
    }
}

TEST_CASE("exhaustive searches recommend the table optimum") {
    const auto table = monotone_table();
    const Evaluator f = make_table_evaluator(table, "w", ObjectiveKind::Time);
    const double optimum = table.best_objective("w", ObjectiveKind::Time);
    for (auto method : {SearchMethod::Naive, SearchMethod::Augmented,
                        SearchMethod::Hybrid, SearchMethod::RandomSearch}) {
        auto cfg = base_config(method, ObjectiveKind::Time, 18, 11);
        const auto trace = run_search(f, table.catalog(), cfg);
        CHECK(trace.measurements_used() == 18);
        CHECK(trace.recommendation_objective == optimum);
        CHECK(trace.stop_reason == "exhausted");
        // No VM measured twice; best-so-far is monotone non-increasing.
        std::set<std::string> seen;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& step : trace.steps) {
            CHECK(seen.insert(step.vm_name).second);
            CHECK(step.best_so_far <= best);
            best = step.best_so_far;
        }
    }
}

TEST_CASE("naive bo beats random search on a smooth table") {
    const auto table = monotone_table();
    const double optimum = table.best_objective("w", ObjectiveKind::Time);
    auto measurements_to_optimal = [&](SearchMethod method, std::uint64_t seed) {
        auto cfg = base_config(method, ObjectiveKind::Time, 18, seed);
        const auto trace = run_search(
            make_table_evaluator(table, "w", ObjectiveKind::Time),
            table.catalog(), cfg);
        for (const auto& step : trace.steps)
            if (step.objective == optimum) return double(step.step_index);
        return double(table.catalog().size() + 1);
    };
    std::vector<double> naive, random;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        naive.push_back(measurements_to_optimal(SearchMethod::Naive, seed));
        random.push_back(measurements_to_optimal(SearchMethod::RandomSearch, seed));
    }
    CHECK(median(naive) < median(random));
}

TEST_CASE("ei-fraction stopping fires on the documented condition") {
    const auto table = monotone_table();
    auto cfg = base_config(SearchMethod::Naive, ObjectiveKind::Time, 18, 3);
    cfg.stopping.kind = StoppingRule::Kind::EiFraction;
    cfg.stopping.fraction = 0.10;
    const auto trace = run_search(
        make_table_evaluator(table, "w", ObjectiveKind::Time), table.catalog(),
        cfg);
    REQUIRE(trace.stop_reason == "ei_fraction");
    REQUIRE(trace.stop_diagnostics.max_ei.has_value());
    CHECK(*trace.stop_diagnostics.max_ei <
          0.10 * std::abs(trace.stop_diagnostics.best_so_far));
    CHECK(trace.steps.back().stopped);
    CHECK(trace.measurements_used() < 18);
}

TEST_CASE("prediction-delta stopping fires on the documented condition") {
    const auto table = monotone_table();
    auto cfg = base_config(SearchMethod::Augmented, ObjectiveKind::Time, 18, 3);
    cfg.stopping.kind = StoppingRule::Kind::PredictionDelta;
    cfg.stopping.theta = 1.1;
    const auto trace = run_search(
        make_table_evaluator(table, "w", ObjectiveKind::Time), table.catalog(),
        cfg);
    REQUIRE(trace.stop_reason == "prediction_delta");
    REQUIRE(trace.stop_diagnostics.min_prediction.has_value());
    CHECK(*trace.stop_diagnostics.min_prediction /
              trace.stop_diagnostics.best_so_far >
          1.1);
    CHECK(trace.steps.back().stopped);
}

TEST_CASE("larger theta never stops earlier on the shared trajectory") {
    const auto table = monotone_table();
    double previous_used = 0.0;
    for (double theta : {0.9, 1.0, 1.1, 1.2, 1.25, 1.3}) {
        auto cfg = base_config(SearchMethod::Augmented, ObjectiveKind::Time, 18, 5);
        cfg.stopping.kind = StoppingRule::Kind::PredictionDelta;
        cfg.stopping.theta = theta;
        const auto trace = run_search(
            make_table_evaluator(table, "w", ObjectiveKind::Time),
            table.catalog(), cfg);
        CHECK(double(trace.measurements_used()) >= previous_used);
        previous_used = double(trace.measurements_used());
    }
}

TEST_CASE("augmented bookkeeping matches the pairwise counts") {
    const auto table = monotone_table();
    const std::size_t n = table.catalog().size();
    auto cfg = base_config(SearchMethod::Augmented, ObjectiveKind::Time, 18, 7);
    const auto trace = run_search(
        make_table_evaluator(table, "w", ObjectiveKind::Time), table.catalog(),
        cfg);
    for (const auto& step : trace.steps) {
        if (step.pairwise_rows == 0) continue;  // initial samples
        const auto k = static_cast<std::size_t>(step.step_index - 1);
        CHECK(step.pairwise_rows == k * k);
        CHECK(step.prediction_queries == k * (n - k));
    }
}

TEST_CASE("hybrid switch points") {
    const auto table = monotone_table();
    const Evaluator f = make_table_evaluator(table, "w", ObjectiveKind::Time);

    SUBCASE("switch at or past the catalog reproduces naive") {
        auto hybrid = base_config(SearchMethod::Hybrid, ObjectiveKind::Time, 18, 2);
        hybrid.switch_step = 18;
        auto naive = base_config(SearchMethod::Naive, ObjectiveKind::Time, 18, 2);
        CHECK(chosen_sequence(run_search(f, table.catalog(), hybrid)) ==
              chosen_sequence(run_search(f, table.catalog(), naive)));
    }
    SUBCASE("switch at n_initial reproduces augmented") {
        auto hybrid = base_config(SearchMethod::Hybrid, ObjectiveKind::Time, 18, 2);
        hybrid.switch_step = hybrid.n_initial;
        auto augmented =
            base_config(SearchMethod::Augmented, ObjectiveKind::Time, 18, 2);
        CHECK(chosen_sequence(run_search(f, table.catalog(), hybrid)) ==
              chosen_sequence(run_search(f, table.catalog(), augmented)));
    }
    SUBCASE("default switch keeps two gp-guided picks") {
        auto hybrid = base_config(SearchMethod::Hybrid, ObjectiveKind::Time, 18, 2);
        CHECK(hybrid.effective_switch_step() == 5);
        auto naive = base_config(SearchMethod::Naive, ObjectiveKind::Time, 18, 2);
        const auto hybrid_seq =
            chosen_sequence(run_search(f, table.catalog(), hybrid));
        const auto naive_seq =
            chosen_sequence(run_search(f, table.catalog(), naive));
        for (int i = 0; i < 5; ++i) CHECK(hybrid_seq[i] == naive_seq[i]);
    }
}

TEST_CASE("traces are deterministic and serialize stably") {
    const auto table = monotone_table();
    auto cfg = base_config(SearchMethod::Augmented, ObjectiveKind::Cost, 18, 21);
    const Evaluator f = make_table_evaluator(table, "w", ObjectiveKind::Cost);
    const auto a = run_search(f, table.catalog(), cfg);
    const auto b = run_search(f, table.catalog(), cfg);
    CHECK(trace_to_json(a) == trace_to_json(b));

    const auto doc = nlohmann::json::parse(trace_to_json(a));
    CHECK(doc["config_digest"] == config_digest(cfg));
    CHECK(doc["measurements_used"] == 18);
    CHECK(doc["steps"].size() == 18);
    for (const char* field : {"step_index", "vm_name", "objective_value",
                              "best_so_far", "acquisition_score", "stopped"})
        CHECK(doc["steps"][0].contains(field));
}

TEST_CASE("failed evaluations follow the fail policy") {
    // Catalog of 3; pair (w, slow) is failed.
    SyntheticSpec spec;
    spec.catalog = {{"a", 1, 2, 2.0, 1, 0.1},
                    {"b", 2, 4, 4.0, 2, 0.2},
                    {"c", 3, 8, 8.0, 3, 0.4}};
    spec.workloads = {{"w", 100.0, 0.0, 0.0}};
    spec.speed_factors = {{"a", 1.0}, {"b", 2.0}, {"c", 4.0}};
    const auto table = generate_synthetic(spec, 0);

    // An evaluator that fails on "b".
    const Evaluator flaky = [&](const std::string& vm) -> Measurement {
        if (vm == "b") throw EvaluationFailure("measurement failed for (w, b)");
        const auto& rec = table.record("w", vm);
        return {objective_value(rec, table.vm(vm), ObjectiveKind::Time),
                rec.low_level};
    };

    SearchConfig cfg;
    cfg.method = SearchMethod::RandomSearch;
    cfg.n_initial = 3;
    cfg.stopping.kind = StoppingRule::Kind::FixedBudget;
    cfg.stopping.budget = 3;
    cfg.init_strategy = InitStrategy::Explicit;
    cfg.init_vms = {"a", "c", "b"};

    SUBCASE("raise aborts with the partial trace attached") {
        cfg.fail_policy = FailPolicy::Raise;
        try {
            run_search(flaky, table.catalog(), cfg);
            FAIL("expected SearchAborted");
        } catch (const SearchAborted& aborted) {
            CHECK(aborted.partial_trace.steps.size() == 2);
            CHECK(aborted.partial_trace.recommendation == "c");
        }
    }
    SUBCASE("worst_case records ten times the current worst") {
        cfg.fail_policy = FailPolicy::WorstCase;
        const auto trace = run_search(flaky, table.catalog(), cfg);
        REQUIRE(trace.steps.size() == 3);
        // Worst so far was a's 100s.
        CHECK(trace.steps.back().vm_name == "b");
        CHECK(trace.steps.back().objective == 1000.0);
        CHECK(trace.recommendation == "c");
    }
}

TEST_CASE("affine scaling leaves chosen sequences unchanged") {
    SyntheticSpec spec;
    spec.catalog = default_catalog();
    spec.workloads = {{"w", 450.0, 0.0, 0.0}};
    for (const auto& vm : spec.catalog)
        spec.speed_factors[vm.name] =
            std::exp(0.2 * vm.cpu_family_code + 0.1 * vm.cores -
                     0.02 * vm.ram_per_core_gb);
    const auto table = generate_synthetic(spec, 0);
    SyntheticSpec scaled_spec = spec;
    for (auto& w : scaled_spec.workloads) w.base_time_s *= 7.3;
    const auto scaled = generate_synthetic(scaled_spec, 0);

    for (auto method : {SearchMethod::Naive, SearchMethod::Augmented}) {
        for (std::uint64_t seed : {1, 9, 33}) {
            auto cfg = base_config(method, ObjectiveKind::Time, 18, seed);
            const auto a = run_search(
                make_table_evaluator(table, "w", ObjectiveKind::Time),
                table.catalog(), cfg);
            const auto b = run_search(
                make_table_evaluator(scaled, "w", ObjectiveKind::Time),
                scaled.catalog(), cfg);
            CHECK(chosen_sequence(a) == chosen_sequence(b));
        }
    }
}
