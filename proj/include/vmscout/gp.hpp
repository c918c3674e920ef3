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

#ifndef VMSCOUT_GP_HPP_
#define VMSCOUT_GP_HPP_

#include <Eigen/Dense>
#include <array>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "vmscout/errors.hpp"

namespace vmscout {

enum class KernelFamily { RBF, Matern12, Matern32, Matern52 };

std::string_view kernel_family_name(KernelFamily family);
KernelFamily kernel_family_from_name(std::string_view name);

/// Stationary anisotropic covariance: the scaled distance
/// r = sqrt(sum_i ((x_i - x2_i) / l_i)^2) feeds one of the four closed forms.
struct Kernel {
    KernelFamily family = KernelFamily::Matern52;
    double signal_variance = 1.0;
    std::vector<double> length_scales;  // one per feature

    static Kernel isotropic(KernelFamily family, std::size_t dim,
                            double length_scale = 1.0,
                            double signal_variance = 1.0);

    void validate(std::size_t feature_dim) const;
};

double kernel_eval(const Kernel& kernel, std::span<const double> x,
                   std::span<const double> x2);

double normal_pdf(double z);
double normal_cdf(double z);

/// GP regression posterior over standardized targets. Targets are stored as
/// (y - target_mean) / target_std with target_std = 1 when all targets are
/// equal; predictions de-standardize back to original units.
struct GpModel {
    std::vector<std::vector<double>> train_inputs;
    Eigen::VectorXd train_targets;  // standardized
    Kernel kernel;
    double noise_variance = 0.0;    // after any jitter escalation
    Eigen::MatrixXd chol_lower;     // L with L L^T = K + noise I
    Eigen::VectorXd alpha;          // (K + noise I)^{-1} train_targets
    double target_mean = 0.0;
    double target_std = 1.0;

    bool fitted() const { return !train_inputs.empty(); }
};

/// Fits the posterior via Cholesky of the regularized kernel matrix. On
/// factorization failure the jitter escalates x10 up to 1e-2 before failing
/// with a condition estimate.
GpModel gp_fit(const std::vector<std::vector<double>>& inputs,
               const std::vector<double>& targets, Kernel kernel,
               double noise_variance);

/// Posterior (mean, variance) in original target units; variance is clamped
/// at 0 after round-off.
std::pair<double, double> gp_predict(const GpModel& model,
                                     std::span<const double> x);

/// Log marginal likelihood of the standardized targets under the fitted model.
double log_marginal_likelihood(const GpModel& model);

/// Closed-form Expected Improvement under the minimization convention.
/// With sigma = sqrt(variance) and z = (best_so_far - mean - xi) / sigma:
///   EI = (best_so_far - mean - xi) * Phi(z) + sigma * phi(z)
/// and max(best_so_far - mean - xi, 0) when sigma == 0.
double expected_improvement(double mean, double variance, double best_so_far,
                            double xi);

/// Refits over the shared-length-scale grid and keeps the kernel with the
/// highest log marginal likelihood (first grid entry wins ties).
Kernel grid_refit_length_scale(const std::vector<std::vector<double>>& inputs,
                               const std::vector<double>& targets,
                               Kernel base, double noise_variance,
                               std::span<const double> grid);

/// Default shared-length-scale grid for the optional refit.
inline constexpr std::array<double, 5> kLengthScaleGrid = {0.1, 0.3, 1.0, 3.0, 10.0};

}  // namespace vmscout

#endif  // VMSCOUT_GP_HPP_
