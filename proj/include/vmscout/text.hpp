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

#ifndef VMSCOUT_TEXT_HPP_
#define VMSCOUT_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace vmscout {

/// Shortest decimal string that round-trips to the same double.
std::string double_to_string(double value);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

/// Strict double parse of the whole token; returns false on garbage.
bool parse_double(std::string_view token, double& out);
bool parse_int(std::string_view token, long long& out);

}  // namespace vmscout

#endif  // VMSCOUT_TEXT_HPP_
