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

#ifndef VMSCOUT_DATASET_HPP_
#define VMSCOUT_DATASET_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vmscout/errors.hpp"

namespace vmscout {

inline constexpr std::size_t kVmFeatureDim = 4;

/// One cloud VM type, described by its published characteristics. The four
/// encoded fields are the instance-space coordinates; the name is an
/// identifier only and never a model feature.
struct VmSpec {
    std::string name;
    int cpu_family_code = 0;      // 1..6
    int cores = 0;                // {2, 4, 8}
    double ram_per_core_gb = 0.0; // {2, 4, 8}
    int ebs_class = 0;            // {1, 2, 3}
    double unit_price = 0.0;      // currency per hour, > 0

    /// Fixed-order encoding: (cpu_family_code, cores, ram_per_core_gb, ebs_class).
    std::array<double, kVmFeatureDim> feature_vector() const {
        return {static_cast<double>(cpu_family_code), static_cast<double>(cores),
                ram_per_core_gb, static_cast<double>(ebs_class)};
    }

    double memory_gb() const { return cores * ram_per_core_gb; }

    /// Throws DataError if any encoded field is outside its domain.
    void validate() const;

    bool operator==(const VmSpec&) const = default;
};

/// The six low-level metrics collected while a workload runs on a VM,
/// pre-aggregated to one scalar per run.
struct LowLevelProfile {
    double cpu_user_pct = 0.0;   // 0..100
    double cpu_iowait_pct = 0.0; // 0..100, cpu_user + cpu_iowait <= 100
    double task_count = 0.0;     // >= 0
    double mem_commit_pct = 0.0; // >= 0, may exceed 100 under overcommit
    double disk_util_pct = 0.0;  // 0..100
    double disk_await_ms = 0.0;  // >= 0

    static constexpr std::size_t kMetricCount = 6;

    std::array<double, kMetricCount> as_array() const {
        return {cpu_user_pct, cpu_iowait_pct, task_count,
                mem_commit_pct, disk_util_pct, disk_await_ms};
    }

    void validate() const;

    bool operator==(const LowLevelProfile&) const = default;
};

/// One (workload, VM) observation. Deployment cost is always derived from
/// exec_time_s and the VM's unit price, never stored.
struct MeasurementRecord {
    std::string workload_id;
    std::string vm_name;
    double exec_time_s = 0.0; // > 0
    LowLevelProfile low_level;
    // Unknown CSV columns, preserved verbatim for round-tripping but ignored
    // by every model.
    std::vector<std::pair<std::string, std::string>> extras;

    bool operator==(const MeasurementRecord&) const = default;
};

enum class ObjectiveKind { Time, Cost, TimeCostProduct };

std::string_view objective_name(ObjectiveKind kind);
ObjectiveKind objective_from_name(std::string_view name);

/// Per-second prorated deployment cost of an hourly price.
inline double deployment_cost(double exec_time_s, double unit_price_per_hour) {
    return exec_time_s * unit_price_per_hour / 3600.0;
}

double objective_value(const MeasurementRecord& rec, const VmSpec& vm,
                       ObjectiveKind kind);

/// Divides every value by the minimum so the optimum maps to exactly 1.0.
/// All values must be > 0; an empty map is an error.
std::map<std::string, double> normalize_to_optimal(
    const std::map<std::string, double>& values);

/// A complete replay table: a VM catalog, a workload list, and one record per
/// (workload, vm) pair unless the pair is explicitly marked failed.
/// Immutable after construction; safe to share across threads.
class MeasurementTable {
public:
    MeasurementTable(std::vector<VmSpec> catalog,
                     std::vector<std::string> workloads,
                     std::vector<MeasurementRecord> records,
                     std::set<std::pair<std::string, std::string>> failed = {});

    const std::vector<VmSpec>& catalog() const { return catalog_; }
    const std::vector<std::string>& workloads() const { return workloads_; }

    const VmSpec& vm(std::string_view name) const;
    std::size_t vm_index(std::string_view name) const;
    bool has_vm(std::string_view name) const;

    bool is_failed(std::string_view workload, std::string_view vm) const;
    std::size_t failure_count() const { return failed_.size(); }

    /// Throws DataError when the pair is missing or marked failed.
    const MeasurementRecord& record(std::string_view workload,
                                    std::string_view vm) const;

    double objective(std::string_view workload, std::string_view vm,
                     ObjectiveKind kind) const;

    /// Brute-force minimum objective over non-failed VMs for one workload.
    double best_objective(std::string_view workload, ObjectiveKind kind) const;
    /// Name of a VM attaining best_objective (lowest catalog index on ties).
    const std::string& best_vm(std::string_view workload,
                               ObjectiveKind kind) const;

    std::size_t record_count() const { return records_.size(); }

    /// Record-wise equality on catalog, workloads, records and failures.
    bool operator==(const MeasurementTable& other) const;

private:
    std::vector<VmSpec> catalog_;
    std::vector<std::string> workloads_;
    std::map<std::pair<std::string, std::string>, MeasurementRecord> records_;
    std::set<std::pair<std::string, std::string>> failed_;
    std::map<std::string, std::size_t, std::less<>> vm_index_;
};

/// CSV ingestion over the documented schema. The header is required; columns
/// may appear in any order; unknown columns are preserved as record extras.
MeasurementTable load_table(const std::filesystem::path& path);
MeasurementTable parse_table_csv(std::string_view text);

std::string table_to_csv(const MeasurementTable& table);
void save_table(const MeasurementTable& table, const std::filesystem::path& path);

}  // namespace vmscout

#endif  // VMSCOUT_DATASET_HPP_
