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

#ifndef VMSCOUT_FOREST_HPP_
#define VMSCOUT_FOREST_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vmscout/errors.hpp"

namespace vmscout {

struct ForestParams {
    enum class MaxFeatures { All, Sqrt };

    int n_trees = 100;
    int min_samples_leaf = 2;
    MaxFeatures max_features = MaxFeatures::All;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_trees < 1) throw ConfigError("n_trees must be >= 1");
        if (min_samples_leaf < 1) throw ConfigError("min_samples_leaf must be >= 1");
    }
};

/// Binary regression tree in flat-array form. Internal nodes route
/// x[feature] <= cut to the left child; leaves carry the node target mean.
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double cut = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes;

    double predict(std::span<const double> x) const;
};

struct ForestModel {
    std::vector<RegressionTree> trees;
    std::size_t feature_dim = 0;
    ForestParams params;

    bool fitted() const { return !trees.empty(); }
};

/// Extra-Trees fit: every tree sees the full training set (no bootstrap); at
/// each node one uniform random cut is drawn per candidate feature within the
/// node's [min, max) and the (feature, cut) pair minimizing total children
/// variance wins, lowest feature index on ties. Splitting stops when the node
/// is smaller than 2 * min_samples_leaf, all targets are equal, or all
/// features are constant. Tree t draws its randomness from mix(seed, t), so
/// fitting is reproducible and order-independent.
ForestModel forest_fit(const std::vector<std::vector<double>>& inputs,
                       const std::vector<double>& targets,
                       const ForestParams& params);

/// (mean, population variance) of the per-tree predictions.
std::pair<double, double> forest_predict(const ForestModel& model,
                                         std::span<const double> x);

}  // namespace vmscout

#endif  // VMSCOUT_FOREST_HPP_
