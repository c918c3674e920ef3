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

#ifndef VMSCOUT_CONFIG_HPP_
#define VMSCOUT_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vmscout/optimizer.hpp"

namespace vmscout {

/// Ordered key=value pairs from a flat config file. '#' starts a comment;
/// blank lines are skipped; later keys override earlier ones.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::string_view text);
KeyValues load_key_values(const std::filesystem::path& path);

/// Parses "key=value" override tokens (repeatable --set flags).
KeyValues parse_overrides(const std::vector<std::string>& tokens);

/// Everything a replayed run needs beyond the search itself.
struct RunSettings {
    SearchConfig search;
    std::vector<std::string> workloads;  // empty selects the whole table
    int n_repeats = 1;
    std::uint64_t base_seed = 0;
};

/// Builds settings from file pairs plus overrides (applied after the file).
/// Unknown keys and malformed values raise ConfigError naming the key.
RunSettings parse_run_settings(const KeyValues& file, const KeyValues& overrides);

/// Canonical flat-text form; parsing it back yields an equal config.
std::string search_config_to_text(const SearchConfig& config);

/// FNV-1a digest of the canonical text, as fixed-width hex.
std::string config_digest(const SearchConfig& config);

}  // namespace vmscout

#endif  // VMSCOUT_CONFIG_HPP_
