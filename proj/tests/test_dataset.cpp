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

#include <algorithm>
#include <cmath>

#include "vmscout/dataset.hpp"
#include "vmscout/synthetic.hpp"

using namespace vmscout;

namespace {

const char* kHeader =
    "workload_id,vm_name,cpu_family_code,cores,ram_per_core_gb,ebs_class,"
    "unit_price_per_hour,exec_time_s,cpu_user_pct,cpu_iowait_pct,task_count,"
    "mem_commit_pct,disk_util_pct,disk_await_ms,failed";

std::string row(const std::string& workload, const std::string& vm, int family,
                int cores, double ram, int ebs, double price, double time) {
    return workload + "," + vm + "," + std::to_string(family) + "," +
           std::to_string(cores) + "," + std::to_string(ram) + "," +
           std::to_string(ebs) + "," + std::to_string(price) + "," +
           std::to_string(time) + ",60,5,50,40,20,3,false\n";
}

MeasurementRecord make_record(double exec_time_s) {
    MeasurementRecord rec;
    rec.workload_id = "w";
    rec.vm_name = "vm";
    rec.exec_time_s = exec_time_s;
    rec.low_level = {60, 5, 50, 40, 20, 3};
    return rec;
}

VmSpec make_vm(const std::string& name, double price) {
    return {name, 1, 2, 2.0, 1, price};
}

}  // namespace

TEST_CASE("load_table ingests a full 18-vm workload") {
    const auto catalog = default_catalog();
    std::string csv = std::string(kHeader) + "\n";
    for (const auto& vm : catalog)
        csv += row("w1", vm.name, vm.cpu_family_code, vm.cores, vm.ram_per_core_gb,
                   vm.ebs_class, vm.unit_price, 100.0 + vm.cores);
    const auto table = parse_table_csv(csv);
    CHECK(table.catalog().size() == 18);
    CHECK(table.workloads().size() == 1);
    CHECK(table.record_count() == 18);
    CHECK(table.vm("c4.xlarge").cores == 4);
}

TEST_CASE("failed pairs load but raise on lookup") {
    std::string csv = std::string(kHeader) + "\n";
    csv += row("w1", "a", 1, 2, 2, 1, 0.1, 100);
    csv += "w1,b,1,4,2,2,0.2,,,,,,,,true\n";
    const auto table = parse_table_csv(csv);
    CHECK(table.failure_count() == 1);
    CHECK(table.is_failed("w1", "b"));
    CHECK_THROWS_AS(table.record("w1", "b"), DataError);
    CHECK(table.record("w1", "a").exec_time_s == doctest::Approx(100.0));
}

TEST_CASE("duplicate (workload, vm) rows are rejected") {
    std::string csv = std::string(kHeader) + "\n";
    csv += row("w1", "a", 1, 2, 2, 1, 0.1, 100);
    csv += row("w1", "b", 1, 4, 2, 2, 0.2, 90);
    csv += row("w1", "a", 1, 2, 2, 1, 0.1, 101);
    CHECK_THROWS_WITH_AS(parse_table_csv(csv),
                         doctest::Contains("duplicate-key"), DataError);
}

TEST_CASE("schema errors name the missing column") {
    std::string header(kHeader);
    const auto pos = header.find(",exec_time_s");
    header.erase(pos, 12);
    CHECK_THROWS_WITH_AS(parse_table_csv(header + "\n"),
                         doctest::Contains("exec_time_s"), DataError);
}

TEST_CASE("non-finite numerics report the row number") {
    std::string csv = std::string(kHeader) + "\n";
    csv += row("w1", "a", 1, 2, 2, 1, 0.1, 100);
    csv += "w1,b,1,4,2,2,0.2,nan,60,5,50,40,20,3,false\n";
    CHECK_THROWS_WITH_AS(parse_table_csv(csv), doctest::Contains("row 2"),
                         DataError);
}

TEST_CASE("inconsistent vm encoding across workloads is rejected") {
    std::string csv = std::string(kHeader) + "\n";
    csv += row("w1", "a", 1, 2, 2, 1, 0.1, 100);
    csv += row("w1", "b", 1, 4, 2, 2, 0.2, 90);
    csv += row("w2", "a", 2, 2, 2, 1, 0.1, 100);  // family flips 1 -> 2
    csv += row("w2", "b", 1, 4, 2, 2, 0.2, 90);
    CHECK_THROWS_WITH_AS(parse_table_csv(csv), doctest::Contains("inconsistent"),
                         DataError);
}

TEST_CASE("incomplete tables are rejected with the missing pair") {
    std::string csv = std::string(kHeader) + "\n";
    csv += row("w1", "a", 1, 2, 2, 1, 0.1, 100);
    csv += row("w1", "b", 1, 4, 2, 2, 0.2, 90);
    csv += row("w2", "a", 1, 2, 2, 1, 0.1, 100);
    CHECK_THROWS_WITH_AS(parse_table_csv(csv), doctest::Contains("(w2, b)"),
                         DataError);
}

TEST_CASE("objective values") {
    const auto vm = make_vm("vm", 0.20);
    const auto rec = make_record(3600.0);
    CHECK(objective_value(rec, vm, ObjectiveKind::Time) == 3600.0);
    CHECK(objective_value(rec, vm, ObjectiveKind::Cost) == doctest::Approx(0.20));
    CHECK(objective_value(rec, vm, ObjectiveKind::TimeCostProduct) ==
          doctest::Approx(720.0));
}

TEST_CASE("cost equals time times price over 3600 exactly") {
    const auto table = cliff9_table();
    for (const auto& w : table.workloads()) {
        for (const auto& vm : table.catalog()) {
            const auto& rec = table.record(w, vm.name);
            const double t = objective_value(rec, vm, ObjectiveKind::Time);
            const double c = objective_value(rec, vm, ObjectiveKind::Cost);
            CHECK(c == t * vm.unit_price / 3600.0);
        }
    }
}

TEST_CASE("normalize_to_optimal") {
    SUBCASE("divides by the minimum") {
        const auto out =
            normalize_to_optimal({{"a", 10.0}, {"b", 20.0}, {"c", 15.0}});
        CHECK(out.at("a") == 1.0);
        CHECK(out.at("b") == 2.0);
        CHECK(out.at("c") == 1.5);
    }
    SUBCASE("constant values map to 1") {
        const auto out = normalize_to_optimal({{"a", 7.0}, {"b", 7.0}});
        CHECK(out.at("a") == 1.0);
        CHECK(out.at("b") == 1.0);
    }
    SUBCASE("a 20x spread survives normalization") {
        const auto out = normalize_to_optimal({{"best", 5.0}, {"worst", 100.0}});
        CHECK(out.at("worst") == doctest::Approx(20.0));
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(normalize_to_optimal({}), DataError);
    }
    SUBCASE("idempotent and scale-invariant") {
        const std::map<std::string, double> values = {
            {"a", 3.5}, {"b", 9.25}, {"c", 4.75}};
        const auto once = normalize_to_optimal(values);
        CHECK(normalize_to_optimal(once) == once);
        std::map<std::string, double> scaled;
        for (const auto& [k, v] : values) scaled[k] = 13.7 * v;
        const auto from_scaled = normalize_to_optimal(scaled);
        for (const auto& [k, v] : once)
            CHECK(from_scaled.at(k) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("csv round-trips under record-wise comparison") {
    std::string csv = std::string(kHeader) + ",runs\n";
    std::string measured = row("w1", "a", 1, 2, 2, 1, 0.105, 123.456);
    measured.insert(measured.size() - 1, ",3");  // extra column value
    csv += measured;
    csv += "w1,b,2,4,4,2,0.266,,,,,,,,true,\n";
    const auto table = parse_table_csv(csv);
    const auto reparsed = parse_table_csv(table_to_csv(table));
    CHECK(reparsed == table);
    CHECK(reparsed.record("w1", "a").extras.size() == 1);
    CHECK(reparsed.record("w1", "a").extras.front().second == "3");
}

TEST_CASE("round-trip of a generated suite") {
    const auto table = smooth9_table();
    CHECK(parse_table_csv(table_to_csv(table)) == table);
}

TEST_CASE("vm and profile domain validation") {
    CHECK_THROWS_AS(make_vm("", 0.1).validate(), DataError);
    CHECK_THROWS_AS((VmSpec{"x", 7, 2, 2.0, 1, 0.1}.validate()), DataError);
    CHECK_THROWS_AS((VmSpec{"x", 1, 3, 2.0, 1, 0.1}.validate()), DataError);
    CHECK_THROWS_AS((VmSpec{"x", 1, 2, 2.0, 1, -0.1}.validate()), DataError);
    CHECK_THROWS_AS((LowLevelProfile{70, 40, 1, 1, 1, 1}.validate()), DataError);
    CHECK_THROWS_AS((LowLevelProfile{10, 5, -1, 1, 1, 1}.validate()), DataError);
    LowLevelProfile overcommit{10, 5, 1, 150, 1, 1};
    CHECK_NOTHROW(overcommit.validate());
    const VmSpec ok{"x", 1, 2, 2.0, 1, 0.1};
    const std::array<double, 4> expected{1, 2, 2, 1};
    CHECK(ok.feature_vector() == expected);
}

TEST_CASE("synthetic generation") {
    // Small catalog with a unique smallest VM so the wall hits exactly one.
    SyntheticSpec spec;
    spec.catalog = {make_vm("tiny", 0.1),
                    {"mid", 2, 4, 4.0, 2, 0.2},
                    {"big", 3, 8, 8.0, 3, 0.4}};
    spec.workloads = {{"w", 100.0, 6.0, 0.0}};  // 6 GB beats tiny's 4 GB
    spec.speed_factors = {{"tiny", 1.0}, {"mid", 1.0}, {"big", 1.0}};
    spec.bottleneck_slowdown = 14.8;

    SUBCASE("the bottlenecked vm is exactly slowdown times the best time") {
        const auto table = generate_synthetic(spec, 0);
        const double best = table.best_objective("w", ObjectiveKind::Time);
        CHECK(table.objective("w", "tiny", ObjectiveKind::Time) ==
              doctest::Approx(14.8 * best).epsilon(1e-12));
        const auto& m = table.record("w", "tiny").low_level;
        CHECK(m.mem_commit_pct >= 95.0);
        CHECK(m.cpu_iowait_pct > 20.0);
        CHECK(m.cpu_user_pct <= 15.0);
        const auto& healthy = table.record("w", "big").low_level;
        CHECK(healthy.mem_commit_pct < 95.0);
    }
    SUBCASE("same spec and seed give byte-identical tables") {
        spec.noise_pct = 2.0;
        CHECK(table_to_csv(generate_synthetic(spec, 7)) ==
              table_to_csv(generate_synthetic(spec, 7)));
        CHECK(table_to_csv(generate_synthetic(spec, 7)) !=
              table_to_csv(generate_synthetic(spec, 8)));
    }
    SUBCASE("no bottleneck rule gives a smooth monotone table") {
        SyntheticSpec smooth = spec;
        smooth.bottleneck_slowdown.reset();
        smooth.workloads = {{"w", 100.0, 0.0, 0.0}};
        smooth.speed_factors = {{"tiny", 1.0}, {"mid", 2.0}, {"big", 4.0}};
        const auto table = generate_synthetic(smooth, 0);
        CHECK(table.best_vm("w", ObjectiveKind::Time) == "big");
        CHECK(table.objective("w", "tiny", ObjectiveKind::Time) ==
              doctest::Approx(100.0));
        CHECK(table.objective("w", "big", ObjectiveKind::Time) ==
              doctest::Approx(25.0));
    }
    SUBCASE("slowdown at or below 1 is a spec error") {
        spec.bottleneck_slowdown = 1.0;
        CHECK_THROWS_AS(generate_synthetic(spec, 0), ConfigError);
        spec.bottleneck_slowdown = 14.8;
        spec.workloads.front().slowdown_override = 0.9;
        CHECK_THROWS_AS(generate_synthetic(spec, 0), ConfigError);
    }
}

TEST_CASE("reference suites have the documented shape") {
    const auto cliff = cliff9_table();
    CHECK(cliff.catalog().size() == 18);
    CHECK(cliff.workloads().size() == 9);
    CHECK(cliff.failure_count() == 0);
    const auto smooth = smooth9_table();
    CHECK(smooth.catalog().size() == 18);
    CHECK(smooth.workloads().size() == 9);
    // The explicit seed-set example names must exist in the default catalog.
    const auto catalog = default_catalog();
    for (const char* name : {"c4.xlarge", "m4.large", "r3.2xlarge"})
        CHECK(std::any_of(catalog.begin(), catalog.end(),
                          [&](const VmSpec& vm) { return vm.name == name; }));
}
