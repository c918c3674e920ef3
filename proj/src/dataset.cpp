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

#include "vmscout/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "vmscout/text.hpp"

namespace vmscout {
namespace {

constexpr double kEps = 1e-9;

bool is_one_of(int v, std::initializer_list<int> allowed) {
    return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
}

bool is_one_of(double v, std::initializer_list<double> allowed) {
    for (double a : allowed)
        if (std::abs(v - a) <= kEps) return true;
    return false;
}

// Canonical column order of the table schema.
const std::vector<std::string> kSchemaColumns = {
    "workload_id",  "vm_name",         "cpu_family_code", "cores",
    "ram_per_core_gb", "ebs_class",    "unit_price_per_hour", "exec_time_s",
    "cpu_user_pct", "cpu_iowait_pct",  "task_count",      "mem_commit_pct",
    "disk_util_pct", "disk_await_ms",  "failed"};

}  // namespace

void VmSpec::validate() const {
    if (name.empty()) throw DataError("vm name must be non-empty");
    if (name.find(',') != std::string::npos)
        throw DataError("vm name must not contain commas: " + name);
    if (cpu_family_code < 1 || cpu_family_code > 6)
        throw DataError("vm " + name + ": cpu_family_code out of 1..6");
    if (!is_one_of(cores, {2, 4, 8}))
        throw DataError("vm " + name + ": cores must be one of {2,4,8}");
    if (!is_one_of(ram_per_core_gb, {2.0, 4.0, 8.0}))
        throw DataError("vm " + name + ": ram_per_core_gb must be one of {2,4,8}");
    if (ebs_class < 1 || ebs_class > 3)
        throw DataError("vm " + name + ": ebs_class out of 1..3");
    if (!(unit_price > 0.0) || !std::isfinite(unit_price))
        throw DataError("vm " + name + ": unit_price must be > 0");
}

void LowLevelProfile::validate() const {
    for (double v : as_array())
        if (!std::isfinite(v))
            throw DataError("low-level metric must be finite");
    auto pct = [](double v) { return v >= -kEps && v <= 100.0 + kEps; };
    if (!pct(cpu_user_pct)) throw DataError("cpu_user_pct out of 0..100");
    if (!pct(cpu_iowait_pct)) throw DataError("cpu_iowait_pct out of 0..100");
    if (cpu_user_pct + cpu_iowait_pct > 100.0 + kEps)
        throw DataError("cpu_user_pct + cpu_iowait_pct exceeds 100");
    if (task_count < -kEps) throw DataError("task_count must be >= 0");
    if (mem_commit_pct < -kEps) throw DataError("mem_commit_pct must be >= 0");
    if (!pct(disk_util_pct)) throw DataError("disk_util_pct out of 0..100");
    if (disk_await_ms < -kEps) throw DataError("disk_await_ms must be >= 0");
}

std::string_view objective_name(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::Time: return "time";
        case ObjectiveKind::Cost: return "cost";
        case ObjectiveKind::TimeCostProduct: return "time_cost_product";
    }
    return "?";
}

ObjectiveKind objective_from_name(std::string_view name) {
    if (name == "time") return ObjectiveKind::Time;
    if (name == "cost") return ObjectiveKind::Cost;
    if (name == "time_cost_product") return ObjectiveKind::TimeCostProduct;
    throw ConfigError("unknown objective: " + std::string(name));
}

double objective_value(const MeasurementRecord& rec, const VmSpec& vm,
                       ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::Time:
            return rec.exec_time_s;
        case ObjectiveKind::Cost:
            return deployment_cost(rec.exec_time_s, vm.unit_price);
        case ObjectiveKind::TimeCostProduct:
            return rec.exec_time_s * deployment_cost(rec.exec_time_s, vm.unit_price);
    }
    throw StateError("unreachable objective kind");
}

std::map<std::string, double> normalize_to_optimal(
    const std::map<std::string, double>& values) {
    if (values.empty()) throw DataError("normalize_to_optimal: empty input");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [name, v] : values) {
        if (!(v > 0.0)) throw DataError("normalize_to_optimal: value for " + name + " must be > 0");
        best = std::min(best, v);
    }
    std::map<std::string, double> out;
    for (const auto& [name, v] : values) out[name] = v / best;
    return out;
}

MeasurementTable::MeasurementTable(
    std::vector<VmSpec> catalog, std::vector<std::string> workloads,
    std::vector<MeasurementRecord> records,
    std::set<std::pair<std::string, std::string>> failed)
    : catalog_(std::move(catalog)),
      workloads_(std::move(workloads)),
      failed_(std::move(failed)) {
    if (catalog_.size() < 2) throw DataError("table needs at least 2 VMs");
    if (workloads_.empty()) throw DataError("table needs at least 1 workload");
    for (std::size_t i = 0; i < catalog_.size(); ++i) {
        catalog_[i].validate();
        if (!vm_index_.emplace(catalog_[i].name, i).second)
            throw DataError("duplicate vm in catalog: " + catalog_[i].name);
    }
    for (auto& rec : records) {
        if (!(rec.exec_time_s > 0.0) || !std::isfinite(rec.exec_time_s))
            throw DataError("record (" + rec.workload_id + ", " + rec.vm_name +
                            "): exec_time_s must be > 0");
        rec.low_level.validate();
        auto key = std::make_pair(rec.workload_id, rec.vm_name);
        if (failed_.count(key))
            throw DataError("pair (" + rec.workload_id + ", " + rec.vm_name +
                            ") is both measured and marked failed");
        if (!records_.emplace(key, std::move(rec)).second)
            throw DataError("duplicate (workload, vm) pair: (" + key.first +
                            ", " + key.second + ")");
    }
    // Completeness: every pair measured or declared failed.
    for (const auto& w : workloads_) {
        for (const auto& vm : catalog_) {
            auto key = std::make_pair(w, vm.name);
            if (!records_.count(key) && !failed_.count(key))
                throw DataError("incomplete table: missing pair (" + w + ", " +
                                vm.name + ")");
        }
    }
}

const VmSpec& MeasurementTable::vm(std::string_view name) const {
    return catalog_[vm_index(name)];
}

std::size_t MeasurementTable::vm_index(std::string_view name) const {
    auto it = vm_index_.find(name);
    if (it == vm_index_.end())
        throw DataError("unknown vm: " + std::string(name));
    return it->second;
}

bool MeasurementTable::has_vm(std::string_view name) const {
    return vm_index_.find(name) != vm_index_.end();
}

bool MeasurementTable::is_failed(std::string_view workload,
                                 std::string_view vm) const {
    return failed_.count({std::string(workload), std::string(vm)}) > 0;
}

const MeasurementRecord& MeasurementTable::record(std::string_view workload,
                                                  std::string_view vm) const {
    auto key = std::make_pair(std::string(workload), std::string(vm));
    if (failed_.count(key))
        throw DataError("pair (" + key.first + ", " + key.second +
                        ") is marked failed");
    auto it = records_.find(key);
    if (it == records_.end())
        throw DataError("no record for pair (" + key.first + ", " + key.second + ")");
    return it->second;
}

double MeasurementTable::objective(std::string_view workload,
                                   std::string_view vm_name,
                                   ObjectiveKind kind) const {
    return objective_value(record(workload, vm_name), vm(vm_name), kind);
}

double MeasurementTable::best_objective(std::string_view workload,
                                        ObjectiveKind kind) const {
    return objective(workload, best_vm(workload, kind), kind);
}

const std::string& MeasurementTable::best_vm(std::string_view workload,
                                             ObjectiveKind kind) const {
    const std::string* best = nullptr;
    double best_value = std::numeric_limits<double>::infinity();
    for (const auto& vm : catalog_) {
        if (is_failed(workload, vm.name)) continue;
        const double v = objective(workload, vm.name, kind);
        if (v < best_value) {
            best_value = v;
            best = &vm.name;
        }
    }
    if (best == nullptr)
        throw DataError("workload " + std::string(workload) +
                        " has no successful measurement");
    return *best;
}

bool MeasurementTable::operator==(const MeasurementTable& other) const {
    return catalog_ == other.catalog_ && workloads_ == other.workloads_ &&
           records_ == other.records_ && failed_ == other.failed_;
}

namespace {

struct CsvHeader {
    std::map<std::string, std::size_t> index;  // column name -> position
    std::vector<std::string> extras;           // non-schema column names
    std::vector<std::size_t> extra_positions;
};

CsvHeader parse_header(const std::string& line) {
    CsvHeader header;
    const auto cells = split(line, ',');
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string name{trim(cells[i])};
        if (name.empty()) throw DataError("csv header has an empty column name");
        if (!header.index.emplace(name, i).second)
            throw DataError("csv header repeats column: " + name);
    }
    for (const auto& required : kSchemaColumns)
        if (!header.index.count(required))
            throw DataError("csv schema error: missing column " + required);
    for (const auto& [name, pos] : header.index) {
        if (std::find(kSchemaColumns.begin(), kSchemaColumns.end(), name) ==
            kSchemaColumns.end()) {
            header.extras.push_back(name);
            header.extra_positions.push_back(pos);
        }
    }
    return header;
}

double parse_numeric_cell(const std::string& cell, const std::string& column,
                          std::size_t row) {
    double v = 0.0;
    if (!parse_double(cell, v) || !std::isfinite(v))
        throw DataError("csv parse error at row " + std::to_string(row) +
                        ", column " + column + ": '" + cell +
                        "' is not a finite number");
    return v;
}

}  // namespace

MeasurementTable parse_table_csv(std::string_view text) {
    std::vector<std::string> lines;
    for (auto& line : split(text, '\n')) {
        std::string_view t = trim(line);
        if (!t.empty()) lines.emplace_back(t);
    }
    if (lines.empty()) throw DataError("csv is empty");
    const CsvHeader header = parse_header(lines.front());

    std::vector<VmSpec> catalog;
    std::map<std::string, std::size_t, std::less<>> seen_vms;
    std::vector<std::string> workloads;
    std::set<std::string> seen_workloads;
    std::vector<MeasurementRecord> records;
    std::set<std::pair<std::string, std::string>> keys;
    std::set<std::pair<std::string, std::string>> failed;

    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto cells = split(lines[row], ',');
        if (cells.size() < header.index.size())
            throw DataError("csv row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.index.size()));
        auto cell = [&](const std::string& column) -> std::string {
            return std::string(trim(cells[header.index.at(column)]));
        };
        auto numeric = [&](const std::string& column) {
            return parse_numeric_cell(cell(column), column, row);
        };

        const std::string workload = cell("workload_id");
        if (workload.empty())
            throw DataError("csv row " + std::to_string(row) + ": empty workload_id");

        VmSpec vm;
        vm.name = cell("vm_name");
        vm.cpu_family_code = static_cast<int>(numeric("cpu_family_code"));
        vm.cores = static_cast<int>(numeric("cores"));
        vm.ram_per_core_gb = numeric("ram_per_core_gb");
        vm.ebs_class = static_cast<int>(numeric("ebs_class"));
        vm.unit_price = numeric("unit_price_per_hour");
        vm.validate();

        if (auto it = seen_vms.find(vm.name); it == seen_vms.end()) {
            seen_vms.emplace(vm.name, catalog.size());
            catalog.push_back(vm);
        } else if (!(catalog[it->second] == vm)) {
            throw DataError("csv row " + std::to_string(row) + ": vm " + vm.name +
                            " encoded inconsistently with an earlier row");
        }
        if (seen_workloads.insert(workload).second) workloads.push_back(workload);

        const std::string failed_cell = cell("failed");
        bool is_failed_row = false;
        if (failed_cell == "true") {
            is_failed_row = true;
        } else if (failed_cell != "false") {
            throw DataError("csv row " + std::to_string(row) +
                            ": failed must be 'true' or 'false', got '" +
                            failed_cell + "'");
        }

        auto key = std::make_pair(workload, vm.name);
        if (keys.count(key) || failed.count(key))
            throw DataError("csv duplicate-key error at row " + std::to_string(row) +
                            ": pair (" + workload + ", " + vm.name + ") repeats");

        if (is_failed_row) {
            failed.insert(key);
            continue;
        }
        keys.insert(key);

        MeasurementRecord rec;
        rec.workload_id = workload;
        rec.vm_name = vm.name;
        rec.exec_time_s = numeric("exec_time_s");
        rec.low_level.cpu_user_pct = numeric("cpu_user_pct");
        rec.low_level.cpu_iowait_pct = numeric("cpu_iowait_pct");
        rec.low_level.task_count = numeric("task_count");
        rec.low_level.mem_commit_pct = numeric("mem_commit_pct");
        rec.low_level.disk_util_pct = numeric("disk_util_pct");
        rec.low_level.disk_await_ms = numeric("disk_await_ms");
        for (std::size_t e = 0; e < header.extras.size(); ++e)
            rec.extras.emplace_back(header.extras[e],
                                    std::string(trim(cells[header.extra_positions[e]])));
        records.push_back(std::move(rec));
    }

    return MeasurementTable(std::move(catalog), std::move(workloads),
                            std::move(records), std::move(failed));
}

MeasurementTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open table file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_table_csv(buf.str());
}

std::string table_to_csv(const MeasurementTable& table) {
    // Union of extra columns, sorted for a stable header.
    std::set<std::string> extra_set;
    for (const auto& w : table.workloads())
        for (const auto& vm : table.catalog())
            if (!table.is_failed(w, vm.name))
                for (const auto& [k, v] : table.record(w, vm.name).extras)
                    extra_set.insert(k);
    const std::vector<std::string> extras(extra_set.begin(), extra_set.end());

    std::string out;
    for (std::size_t i = 0; i < kSchemaColumns.size(); ++i) {
        if (i) out += ',';
        out += kSchemaColumns[i];
    }
    for (const auto& e : extras) out += "," + e;
    out += '\n';

    for (const auto& w : table.workloads()) {
        for (const auto& vm : table.catalog()) {
            out += w + ',' + vm.name + ',' + std::to_string(vm.cpu_family_code) +
                   ',' + std::to_string(vm.cores) + ',' +
                   double_to_string(vm.ram_per_core_gb) + ',' +
                   std::to_string(vm.ebs_class) + ',' +
                   double_to_string(vm.unit_price) + ',';
            if (table.is_failed(w, vm.name)) {
                out += ",,,,,,,true";
                for (std::size_t e = 0; e < extras.size(); ++e) out += ',';
            } else {
                const auto& rec = table.record(w, vm.name);
                out += double_to_string(rec.exec_time_s);
                for (double v : rec.low_level.as_array())
                    out += ',' + double_to_string(v);
                out += ",false";
                for (const auto& e : extras) {
                    out += ',';
                    for (const auto& [k, v] : rec.extras)
                        if (k == e) {
                            out += v;
                            break;
                        }
                }
            }
            out += '\n';
        }
    }
    return out;
}

void save_table(const MeasurementTable& table,
                const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write table file: " + path.string());
    out << table_to_csv(table);
}

}  // namespace vmscout
