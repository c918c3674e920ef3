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

#ifndef VMSCOUT_CLI_HPP_
#define VMSCOUT_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace vmscout {

/// Exit codes shared by every subcommand: 0 success, 2 config error, 3 data
/// error, 4 runtime/search error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;
inline constexpr int kExitRuntimeError = 4;

struct CliOptions {
    std::filesystem::path table;
    std::filesystem::path config;
    std::filesystem::path config_b;  // compare only
    std::vector<std::string> overrides;
    std::filesystem::path out;
    int jobs = 1;
    bool force = false;
};

int cmd_run(const CliOptions& options, std::ostream& console);
int cmd_compare(const CliOptions& options, std::ostream& console);
int cmd_sweep(const CliOptions& options, std::ostream& console);
int cmd_gen_synthetic(const CliOptions& options, std::ostream& console);
int cmd_validate(const CliOptions& options, std::ostream& console);

}  // namespace vmscout

#endif  // VMSCOUT_CLI_HPP_
