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

#include "vmscout/gp.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace vmscout {

std::string_view kernel_family_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::RBF: return "rbf";
        case KernelFamily::Matern12: return "matern12";
        case KernelFamily::Matern32: return "matern32";
        case KernelFamily::Matern52: return "matern52";
    }
    return "?";
}

KernelFamily kernel_family_from_name(std::string_view name) {
    if (name == "rbf") return KernelFamily::RBF;
    if (name == "matern12") return KernelFamily::Matern12;
    if (name == "matern32") return KernelFamily::Matern32;
    if (name == "matern52") return KernelFamily::Matern52;
    throw ConfigError("unknown kernel: " + std::string(name));
}

Kernel Kernel::isotropic(KernelFamily family, std::size_t dim,
                         double length_scale, double signal_variance) {
    Kernel k;
    k.family = family;
    k.signal_variance = signal_variance;
    k.length_scales.assign(dim, length_scale);
    return k;
}

void Kernel::validate(std::size_t feature_dim) const {
    if (!(signal_variance > 0.0))
        throw ConfigError("kernel signal_variance must be > 0");
    if (length_scales.size() != feature_dim)
        throw ConfigError("kernel needs " + std::to_string(feature_dim) +
                          " length scales, got " +
                          std::to_string(length_scales.size()));
    for (double l : length_scales)
        if (!(l > 0.0)) throw ConfigError("kernel length scales must be > 0");
}

double kernel_eval(const Kernel& kernel, std::span<const double> x,
                   std::span<const double> x2) {
    if (x.size() != kernel.length_scales.size() || x2.size() != x.size())
        throw StateError("kernel_eval: feature dimension mismatch");
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = (x[i] - x2[i]) / kernel.length_scales[i];
        r2 += d * d;
    }
    const double r = std::sqrt(r2);
    const double s2 = kernel.signal_variance;
    switch (kernel.family) {
        case KernelFamily::RBF:
            return s2 * std::exp(-0.5 * r2);
        case KernelFamily::Matern12:
            return s2 * std::exp(-r);
        case KernelFamily::Matern32: {
            const double a = std::numbers::sqrt3 * r;
            return s2 * (1.0 + a) * std::exp(-a);
        }
        case KernelFamily::Matern52: {
            const double a = std::sqrt(5.0) * r;
            return s2 * (1.0 + a + 5.0 * r2 / 3.0) * std::exp(-a);
        }
    }
    throw StateError("unreachable kernel family");
}

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

namespace {

Eigen::MatrixXd kernel_matrix(const Kernel& kernel,
                              const std::vector<std::vector<double>>& inputs) {
    const auto n = static_cast<Eigen::Index>(inputs.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = kernel_eval(kernel, inputs[i], inputs[j]);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

}  // namespace

GpModel gp_fit(const std::vector<std::vector<double>>& inputs,
               const std::vector<double>& targets, Kernel kernel,
               double noise_variance) {
    if (inputs.empty()) throw StateError("gp_fit: empty training set");
    if (inputs.size() != targets.size())
        throw StateError("gp_fit: inputs and targets differ in size");
    kernel.validate(inputs.front().size());
    if (noise_variance < 0.0) throw ConfigError("noise_variance must be >= 0");

    GpModel model;
    model.train_inputs = inputs;
    model.kernel = std::move(kernel);

    const auto n = static_cast<Eigen::Index>(targets.size());
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = targets[i];
    model.target_mean = y.mean();
    const double var = (y.array() - model.target_mean).square().sum() / n;
    model.target_std = var > 0.0 ? std::sqrt(var) : 1.0;
    model.train_targets = (y.array() - model.target_mean) / model.target_std;

    const Eigen::MatrixXd k = kernel_matrix(model.kernel, model.train_inputs);
    double jitter = noise_variance;
    while (true) {
        Eigen::MatrixXd reg = k;
        reg.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(reg);
        if (llt.info() == Eigen::Success) {
            model.noise_variance = jitter;
            model.chol_lower = llt.matrixL();
            model.alpha = llt.solve(model.train_targets);
            return model;
        }
        const double next = jitter > 0.0 ? jitter * 10.0 : 1e-6;
        if (next > 1e-2) {
            // Only hit with a degenerate kernel matrix; the eigen range is
            // cheap at these sizes and makes the failure actionable.
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
            const double lo = es.eigenvalues().minCoeff();
            const double hi = es.eigenvalues().maxCoeff();
            throw StateError(
                "gp_fit: kernel matrix not positive definite after jitter "
                "escalation to 1e-2 (eigenvalue range [" +
                std::to_string(lo) + ", " + std::to_string(hi) + "])");
        }
        jitter = next;
    }
}

std::pair<double, double> gp_predict(const GpModel& model,
                                     std::span<const double> x) {
    if (!model.fitted()) throw StateError("gp_predict: model is not fitted");
    const auto n = static_cast<Eigen::Index>(model.train_inputs.size());
    Eigen::VectorXd kx(n);
    for (Eigen::Index i = 0; i < n; ++i)
        kx(i) = kernel_eval(model.kernel, model.train_inputs[i], x);

    const double mean_std = kx.dot(model.alpha);
    const Eigen::VectorXd v =
        model.chol_lower.triangularView<Eigen::Lower>().solve(kx);
    const double prior = kernel_eval(model.kernel, x, x);
    const double var_std = std::max(0.0, prior - v.squaredNorm());

    const double mean = model.target_mean + model.target_std * mean_std;
    const double variance = model.target_std * model.target_std * var_std;
    return {mean, variance};
}

double log_marginal_likelihood(const GpModel& model) {
    if (!model.fitted()) throw StateError("log_marginal_likelihood: unfitted model");
    const auto n = static_cast<double>(model.train_inputs.size());
    double log_det_half = 0.0;
    for (Eigen::Index i = 0; i < model.chol_lower.rows(); ++i)
        log_det_half += std::log(model.chol_lower(i, i));
    return -0.5 * model.train_targets.dot(model.alpha) - log_det_half -
           0.5 * n * std::log(2.0 * std::numbers::pi);
}

double expected_improvement(double mean, double variance, double best_so_far,
                            double xi) {
    const double gap = best_so_far - mean - xi;
    if (variance <= 0.0) return std::max(gap, 0.0);
    const double sigma = std::sqrt(variance);
    const double z = gap / sigma;
    const double ei = gap * normal_cdf(z) + sigma * normal_pdf(z);
    return std::max(ei, 0.0);
}

Kernel grid_refit_length_scale(const std::vector<std::vector<double>>& inputs,
                               const std::vector<double>& targets, Kernel base,
                               double noise_variance,
                               std::span<const double> grid) {
    if (grid.empty()) throw ConfigError("length-scale grid must be non-empty");
    Kernel best = base;
    double best_lml = -std::numeric_limits<double>::infinity();
    for (double scale : grid) {
        Kernel candidate = base;
        candidate.length_scales.assign(base.length_scales.size(), scale);
        const GpModel model = gp_fit(inputs, targets, candidate, noise_variance);
        const double lml = log_marginal_likelihood(model);
        if (lml > best_lml) {
            best_lml = lml;
            best = candidate;
        }
    }
    return best;
}

}  // namespace vmscout
