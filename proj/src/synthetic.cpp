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

#include "vmscout/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vmscout/optimizer.hpp"
#include "vmscout/rng.hpp"

namespace vmscout {

MeasurementTable generate_synthetic(const SyntheticSpec& spec,
                                    std::uint64_t seed) {
    if (spec.workloads.empty())
        throw ConfigError("synthetic spec needs at least one workload");
    if (spec.bottleneck_slowdown && !(*spec.bottleneck_slowdown > 1.0))
        throw ConfigError("synthetic spec: slowdown factor must be > 1");
    for (const auto& w : spec.workloads) {
        if (!(w.base_time_s > 0.0))
            throw ConfigError("synthetic workload " + w.id +
                              ": base_time_s must be > 0");
        if (w.slowdown_override != 0.0 && !(w.slowdown_override > 1.0))
            throw ConfigError("synthetic workload " + w.id +
                              ": slowdown factor must be > 1");
    }
    if (spec.noise_pct < 0.0 || spec.noise_pct >= 100.0)
        throw ConfigError("synthetic spec: noise_pct must be in [0, 100)");

    for (const auto& vm : spec.catalog) {
        auto it = spec.speed_factors.find(vm.name);
        if (it == spec.speed_factors.end())
            throw ConfigError("synthetic spec: no speed factor for vm " + vm.name);
        if (!(it->second > 0.0))
            throw ConfigError("synthetic spec: speed factor for vm " + vm.name +
                              " must be > 0");
    }

    Rng rng(seed);
    std::vector<std::string> workload_ids;
    std::vector<MeasurementRecord> records;
    for (const auto& w : spec.workloads) {
        workload_ids.push_back(w.id);
        for (const auto& vm : spec.catalog) {
            const double capacity = vm.memory_gb();
            const bool bottlenecked = spec.bottleneck_slowdown &&
                                      w.footprint_gb > 0.0 &&
                                      w.footprint_gb > capacity;
            const double slowdown =
                bottlenecked ? (w.slowdown_override > 0.0
                                    ? w.slowdown_override
                                    : *spec.bottleneck_slowdown)
                             : 1.0;

            double time = w.base_time_s / spec.speed_factors.at(vm.name) * slowdown;
            if (spec.noise_pct > 0.0)
                time *= 1.0 + (spec.noise_pct / 100.0) * (2.0 * rng.uniform() - 1.0);

            const double pressure =
                w.footprint_gb > 0.0 ? w.footprint_gb / capacity : 0.35;

            MeasurementRecord rec;
            rec.workload_id = w.id;
            rec.vm_name = vm.name;
            rec.exec_time_s = time;
            LowLevelProfile& m = rec.low_level;
            if (bottlenecked) {
                m.mem_commit_pct = std::min(100.0 * pressure, 175.0);
                m.cpu_iowait_pct = std::min(30.0 + 25.0 * (pressure - 1.0), 70.0);
                m.cpu_user_pct = 10.0;
                m.disk_util_pct = std::min(60.0 + 10.0 * (pressure - 1.0), 90.0);
                m.disk_await_ms = 25.0 + 5.0 * (pressure - 1.0);
            } else {
                m.mem_commit_pct = std::min(100.0 * pressure, 90.0);
                m.cpu_iowait_pct = 4.0;
                m.cpu_user_pct = std::min(45.0 + 6.0 * vm.cores, 92.0);
                m.disk_util_pct = 25.0;
                m.disk_await_ms = 3.0;
            }
            m.task_count = 30.0 + 12.0 * vm.cores;
            records.push_back(std::move(rec));
        }
    }
    return MeasurementTable(spec.catalog, std::move(workload_ids),
                            std::move(records));
}

std::vector<VmSpec> default_catalog() {
    struct Family {
        const char* prefix;
        int code;
        double ram_per_core;
        double large_price;
    };
    // Six families x {large, xlarge, 2xlarge}; prices track the on-demand
    // price sheet the encoding was designed around.
    static const Family families[] = {
        {"c3", 1, 2.0, 0.105}, {"c4", 2, 2.0, 0.100}, {"m3", 3, 4.0, 0.133},
        {"m4", 4, 4.0, 0.100}, {"r3", 5, 8.0, 0.166}, {"r4", 6, 8.0, 0.133},
    };
    struct Size {
        const char* suffix;
        int cores;
        int ebs_class;
    };
    static const Size sizes[] = {{"large", 2, 1}, {"xlarge", 4, 2}, {"2xlarge", 8, 3}};

    std::vector<VmSpec> catalog;
    catalog.reserve(18);
    for (const auto& family : families) {
        for (const auto& size : sizes) {
            VmSpec vm;
            vm.name = std::string(family.prefix) + "." + size.suffix;
            vm.cpu_family_code = family.code;
            vm.cores = size.cores;
            vm.ram_per_core_gb = family.ram_per_core;
            vm.ebs_class = size.ebs_class;
            vm.unit_price = family.large_price * (size.cores / 2.0);
            catalog.push_back(std::move(vm));
        }
    }
    return catalog;
}

namespace {

// exp(weights . standardized features); smooth and monotone per dimension.
std::map<std::string, double> smooth_speed_map(
    const std::vector<VmSpec>& catalog, const std::array<double, 4>& weights) {
    const FeatureScaler scaler = FeatureScaler::fit(catalog);
    std::map<std::string, double> out;
    for (const auto& vm : catalog) {
        const auto z = scaler.transform(vm);
        double dot = 0.0;
        for (std::size_t d = 0; d < z.size(); ++d) dot += weights[d] * z[d];
        out[vm.name] = std::exp(dot);
    }
    return out;
}

}  // namespace

MeasurementTable smooth9_table(std::uint64_t seed, double noise_pct) {
    const auto catalog = default_catalog();
    // Weights over (cpu_family_code, cores, ram_per_core, ebs_class).
    static const std::array<double, 4> weights[] = {
        {0.10, 0.80, 0.10, 0.05}, {0.60, 0.30, 0.00, 0.10},
        {0.05, 0.30, 0.60, 0.00}, {0.30, 0.30, 0.30, 0.10},
        {-0.50, 0.50, 0.20, 0.00}, {0.20, -0.40, 0.60, 0.20},
        {0.50, 0.20, -0.30, 0.30}, {0.15, 0.50, 0.35, -0.20},
        {-0.30, 0.60, -0.20, 0.40},
    };
    std::vector<MeasurementTable> parts;
    for (int i = 0; i < 9; ++i) {
        SyntheticSpec spec;
        spec.catalog = catalog;
        spec.noise_pct = noise_pct;
        spec.workloads = {{"smooth-" + std::to_string(i + 1),
                           240.0 * (1.0 + 0.37 * i), 0.0, 0.0}};
        spec.speed_factors = smooth_speed_map(catalog, weights[i]);
        parts.push_back(generate_synthetic(spec, mix_seed(seed, i)));
    }
    return merge_tables(parts);
}

MeasurementTable cliff9_table(std::uint64_t seed, double noise_pct) {
    const auto catalog = default_catalog();
    struct CliffWorkload {
        double footprint_gb;
        double slowdown;
        std::array<double, 4> weights;  // mild smooth part under the wall
    };
    // Footprints straddle the capacity ladder (4..64 GB) so each wall cuts a
    // different diagonal through the cores x ram product; slowdowns vary the
    // cliff depth.
    static const CliffWorkload cliffs[] = {
        {6.0, 12.0, {0.05, 0.10, -0.06, 0.02}},
        {10.0, 9.0, {-0.04, 0.08, 0.05, 0.00}},
        {12.0, 14.8, {0.06, -0.05, 0.04, 0.03}},
        {14.0, 8.0, {0.02, 0.12, 0.02, -0.04}},
        {20.0, 10.0, {-0.06, 0.06, -0.03, 0.05}},
        {26.0, 12.0, {0.08, 0.04, 0.06, 0.00}},
        {30.0, 9.5, {0.00, -0.08, 0.08, 0.04}},
        {40.0, 11.0, {0.05, 0.05, -0.05, -0.02}},
        {48.0, 13.0, {-0.03, 0.10, 0.03, 0.02}},
    };
    std::vector<MeasurementTable> parts;
    for (int i = 0; i < 9; ++i) {
        const auto& c = cliffs[i];
        SyntheticSpec spec;
        spec.catalog = catalog;
        spec.noise_pct = noise_pct;
        spec.bottleneck_slowdown = c.slowdown;
        spec.workloads = {{"cliff-" + std::to_string(i + 1),
                           300.0 * (1.0 + 0.23 * i), c.footprint_gb, 0.0}};
        spec.speed_factors = smooth_speed_map(catalog, c.weights);
        parts.push_back(generate_synthetic(spec, mix_seed(seed, 100 + i)));
    }
    return merge_tables(parts);
}

MeasurementTable merge_tables(const std::vector<MeasurementTable>& tables) {
    if (tables.empty()) throw DataError("merge_tables: nothing to merge");
    const auto& catalog = tables.front().catalog();
    std::vector<std::string> workloads;
    std::vector<MeasurementRecord> records;
    std::set<std::pair<std::string, std::string>> failed;
    for (const auto& table : tables) {
        if (!(table.catalog() == catalog))
            throw DataError("merge_tables: catalogs differ");
        for (const auto& w : table.workloads()) {
            workloads.push_back(w);
            for (const auto& vm : catalog) {
                if (table.is_failed(w, vm.name))
                    failed.insert({w, vm.name});
                else
                    records.push_back(table.record(w, vm.name));
            }
        }
    }
    return MeasurementTable(catalog, std::move(workloads), std::move(records),
                            std::move(failed));
}

}  // namespace vmscout
