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

#ifndef VMSCOUT_STATS_HPP_
#define VMSCOUT_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vmscout/errors.hpp"

namespace vmscout {

/// Linearly interpolated quantile (numpy default). p in [0, 1].
inline double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw StateError("quantile of empty sample");
    std::sort(values.begin(), values.end());
    if (values.size() == 1) return values.front();
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

inline double median(std::vector<double> values) {
    return quantile(std::move(values), 0.5);
}

inline double mean(const std::vector<double>& values) {
    if (values.empty()) throw StateError("mean of empty sample");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

}  // namespace vmscout

#endif  // VMSCOUT_STATS_HPP_
