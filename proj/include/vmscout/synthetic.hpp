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

#ifndef VMSCOUT_SYNTHETIC_HPP_
#define VMSCOUT_SYNTHETIC_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vmscout/dataset.hpp"

namespace vmscout {

struct SyntheticWorkload {
    std::string id;
    double base_time_s = 0.0;  // > 0
    double footprint_gb = 0.0; // 0 disables the bottleneck for this workload
    // Overrides the spec-level slowdown when > 0.
    double slowdown_override = 0.0;
};

/// Declarative description of a synthetic measurement table. Execution time
/// is base_time / speed_factor(vm); when a bottleneck rule is present and the
/// workload footprint exceeds cores * ram_per_core, the time is multiplied by
/// the slowdown factor and the low-level metrics flip to a memory-pressure
/// shape (mem_commit >= 95, low cpu_user, elevated iowait).
struct SyntheticSpec {
    std::vector<VmSpec> catalog;
    std::vector<SyntheticWorkload> workloads;
    std::map<std::string, double> speed_factors;  // vm_name -> factor > 0
    std::optional<double> bottleneck_slowdown;    // must be > 1 when present
    double noise_pct = 0.0;  // uniform +-noise_pct% jitter on times, seeded
};

/// Pure function of (spec, seed): the same inputs produce a byte-identical
/// table.
MeasurementTable generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

/// The 18-VM catalog mirroring six families x three sizes with encoded
/// features and hourly prices.
std::vector<VmSpec> default_catalog();

/// Reference suites over the default catalog, 9 workloads each. SMOOTH-9 has
/// smooth per-workload speed landscapes where a smooth surrogate thrives;
/// CLIFF-9 adds per-workload memory walls whose slowdowns the low-level
/// metrics reveal. Seed only matters when noise_pct > 0.
MeasurementTable smooth9_table(std::uint64_t seed = 0, double noise_pct = 0.0);
MeasurementTable cliff9_table(std::uint64_t seed = 0, double noise_pct = 0.0);

/// Concatenates tables that share one catalog; workload ids must not repeat.
MeasurementTable merge_tables(const std::vector<MeasurementTable>& tables);

}  // namespace vmscout

#endif  // VMSCOUT_SYNTHETIC_HPP_
