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

#include "vmscout/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vmscout/rng.hpp"

namespace vmscout {

double RegressionTree::predict(std::span<const double> x) const {
    int idx = 0;
    while (!nodes[idx].is_leaf()) {
        const TreeNode& node = nodes[idx];
        idx = x[node.feature] <= node.cut ? node.left : node.right;
    }
    return nodes[idx].value;
}

namespace {

struct TreeBuilder {
    const std::vector<std::vector<double>>& inputs;
    const std::vector<double>& targets;
    const ForestParams& params;
    std::size_t feature_dim;
    Rng rng;
    RegressionTree tree;
    std::vector<std::size_t> candidate_buf;

    TreeBuilder(const std::vector<std::vector<double>>& inputs,
                const std::vector<double>& targets, const ForestParams& params,
                std::uint64_t tree_seed)
        : inputs(inputs),
          targets(targets),
          params(params),
          feature_dim(inputs.front().size()),
          rng(tree_seed) {}

    // Candidate features for one node: all of them, or a sorted random subset
    // of size floor(sqrt(dim)) drawn without replacement. Sorting keeps the
    // lowest-feature-index tie-break meaningful.
    std::span<const std::size_t> draw_candidates() {
        candidate_buf.resize(feature_dim);
        std::iota(candidate_buf.begin(), candidate_buf.end(), std::size_t{0});
        if (params.max_features == ForestParams::MaxFeatures::All)
            return candidate_buf;
        const auto m = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::sqrt(static_cast<double>(feature_dim))));
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + rng.uniform_index(feature_dim - i);
            std::swap(candidate_buf[i], candidate_buf[j]);
        }
        candidate_buf.resize(m);
        std::sort(candidate_buf.begin(), candidate_buf.end());
        return candidate_buf;
    }

    int build(std::vector<std::size_t>& rows) {
        const int node_index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        double sum = 0.0;
        for (std::size_t r : rows) sum += targets[r];
        const double node_mean = sum / static_cast<double>(rows.size());

        bool targets_equal = true;
        for (std::size_t r : rows)
            if (targets[r] != targets[rows.front()]) {
                targets_equal = false;
                break;
            }

        if (rows.size() < 2 * static_cast<std::size_t>(params.min_samples_leaf) ||
            targets_equal) {
            tree.nodes[node_index].value = node_mean;
            return node_index;
        }

        // One uniform cut per non-constant candidate feature; keep the pair
        // with the smallest total children squared deviation.
        int best_feature = -1;
        double best_cut = 0.0;
        double best_score = std::numeric_limits<double>::infinity();
        for (std::size_t f : draw_candidates()) {
            double lo = inputs[rows.front()][f];
            double hi = lo;
            for (std::size_t r : rows) {
                lo = std::min(lo, inputs[r][f]);
                hi = std::max(hi, inputs[r][f]);
            }
            if (!(hi > lo)) continue;  // constant feature in this node
            const double cut = rng.uniform(lo, hi);

            double n_l = 0.0, sum_l = 0.0, sq_l = 0.0;
            double n_r = 0.0, sum_r = 0.0, sq_r = 0.0;
            for (std::size_t r : rows) {
                const double y = targets[r];
                if (inputs[r][f] <= cut) {
                    n_l += 1.0;
                    sum_l += y;
                    sq_l += y * y;
                } else {
                    n_r += 1.0;
                    sum_r += y;
                    sq_r += y * y;
                }
            }
            const double score =
                (sq_l - sum_l * sum_l / n_l) + (sq_r - sum_r * sum_r / n_r);
            if (score < best_score) {
                best_score = score;
                best_feature = static_cast<int>(f);
                best_cut = cut;
            }
        }

        if (best_feature < 0) {  // all features constant
            tree.nodes[node_index].value = node_mean;
            return node_index;
        }

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(rows.size());
        right_rows.reserve(rows.size());
        for (std::size_t r : rows) {
            if (inputs[r][best_feature] <= best_cut)
                left_rows.push_back(r);
            else
                right_rows.push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        tree.nodes[node_index].feature = best_feature;
        tree.nodes[node_index].cut = best_cut;
        const int left = build(left_rows);
        tree.nodes[node_index].left = left;
        const int right = build(right_rows);
        tree.nodes[node_index].right = right;
        return node_index;
    }
};

}  // namespace

ForestModel forest_fit(const std::vector<std::vector<double>>& inputs,
                       const std::vector<double>& targets,
                       const ForestParams& params) {
    params.validate();
    if (inputs.empty()) throw StateError("forest_fit: empty training set");
    if (inputs.size() != targets.size())
        throw StateError("forest_fit: inputs and targets differ in size");
    const std::size_t dim = inputs.front().size();
    for (const auto& row : inputs)
        if (row.size() != dim)
            throw StateError("forest_fit: ragged feature rows");

    ForestModel model;
    model.feature_dim = dim;
    model.params = params;
    model.trees.resize(params.n_trees);
    for (int t = 0; t < params.n_trees; ++t) {
        TreeBuilder builder(inputs, targets, params,
                            mix_seed(params.seed, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> rows(inputs.size());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        builder.build(rows);
        model.trees[t] = std::move(builder.tree);
    }
    return model;
}

std::pair<double, double> forest_predict(const ForestModel& model,
                                         std::span<const double> x) {
    if (!model.fitted()) throw StateError("forest_predict: model is not fitted");
    if (x.size() != model.feature_dim)
        throw StateError("forest_predict: feature dimension mismatch");
    double sum = 0.0, sq = 0.0;
    for (const auto& tree : model.trees) {
        const double p = tree.predict(x);
        sum += p;
        sq += p * p;
    }
    const double n = static_cast<double>(model.trees.size());
    const double mean = sum / n;
    const double variance = std::max(0.0, sq / n - mean * mean);
    return {mean, variance};
}

}  // namespace vmscout
