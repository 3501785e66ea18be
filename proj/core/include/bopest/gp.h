// Copyright 2026 The bopest Authors.
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

#ifndef BOPEST_GP_H_
#define BOPEST_GP_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "bopest/domain.h"

namespace bopest {

// Hyperparameters of the ARD Matern 5/2 kernel plus Gaussian observation
// noise. All variances are in squared output units.
struct KernelHyperparams {
  double signal_variance = 1.0;
  Eigen::VectorXd lengthscales;
  double noise_variance = 0.0;

  static KernelHyperparams Unit(int dim);

  int dim() const { return static_cast<int>(lengthscales.size()); }
  // throws InvalidArgument unless signal_variance > 0, lengthscales > 0 and
  // noise_variance >= 0
  void Validate() const;
};

// k(a, b) = s2 (1 + sqrt(5) r + 5 r^2 / 3) exp(-sqrt(5) r), with r the
// lengthscale-weighted Euclidean distance.
double Matern52(const ParameterVector& a, const ParameterVector& b,
                const KernelHyperparams& h);

struct Dataset {
  std::vector<ParameterVector> inputs;
  std::vector<double> targets;

  int size() const { return static_cast<int>(targets.size()); }
  bool empty() const { return targets.empty(); }
  void Add(ParameterVector x, double y);
  void Validate() const;
};

// Lower Cholesky factor of K + (noise + jitter) I.
struct GramFactor {
  Eigen::MatrixXd lower;
  double jitter = 0.0;  // extra diagonal actually applied

  // solves (L L^T) x = b
  Eigen::VectorXd Solve(const Eigen::VectorXd& b) const;
  double LogDeterminant() const;
};

Eigen::MatrixXd KernelMatrix(const std::vector<ParameterVector>& inputs,
                             const KernelHyperparams& h);

// Factorizes the Gram matrix. On failure the jitter is multiplied by 10 until
// it exceeds `max_jitter`; then NumericalInstability is thrown.
GramFactor BuildGram(const std::vector<ParameterVector>& inputs,
                     const KernelHyperparams& h, double jitter,
                     double max_jitter);

// Jitter policy default: start at 1e-10 s2, cap at 1e-4 s2.
GramFactor BuildGram(const std::vector<ParameterVector>& inputs,
                     const KernelHyperparams& h);

double LogMarginalLikelihood(const Dataset& data, const KernelHyperparams& h);

struct HyperparamBounds {
  double min_signal_variance = 1e-3;
  double max_signal_variance = 1e2;
  double min_lengthscale = 1e-3;
  double max_lengthscale = 10.0;
  double min_noise_variance = 1e-8;
  double max_noise_variance = 1.0;
};

struct FitOptions {
  HyperparamBounds bounds;
  int restarts = 4;
  int max_evals_per_restart = 300;
  bool fit_noise = true;
  std::uint64_t seed = 0;
};

struct FitResult {
  KernelHyperparams hyperparams;
  double log_marginal_likelihood = 0.0;
  double initial_log_marginal_likelihood = 0.0;
  int evaluations = 0;
  // set when no restart produced a factorizable point; hyperparams == init
  bool failed = false;
};

// Multi-start bounded Nelder-Mead ascent of the log marginal likelihood in
// log-hyperparameter space. Never returns a point worse than `init`.
FitResult FitHyperparams(const Dataset& data, const KernelHyperparams& init,
                         const FitOptions& options = {});

struct GpOptions {
  // When set, inputs are mapped to [0, 1]^d before kernel evaluation.
  std::optional<Domain> input_domain;
  // Subtract the target mean and divide by the standard deviation.
  bool standardize_targets = false;
};

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;      // clamped to >= 0
  double raw_variance = 0.0;  // before clamping
};

// Immutable GP regression model. Hyperparameters live in the transformed
// (normalized input, standardized target) space; predictions are returned in
// raw target units.
class GpModel {
 public:
  GpModel(Dataset data, KernelHyperparams hyperparams, GpOptions options = {});

  // Fits hyperparameters on the transformed data starting from `init`, then
  // builds the model.
  static GpModel Fit(Dataset data, const KernelHyperparams& init,
                     GpOptions options, const FitOptions& fit_options,
                     FitResult* fit_result = nullptr);

  Posterior Predict(const ParameterVector& q) const;
  double LogMarginalLikelihood() const;

  const Dataset& dataset() const { return raw_; }
  // Inputs/targets after normalization and standardization.
  const Dataset& transformed() const { return transformed_; }
  const KernelHyperparams& hyperparams() const { return hyperparams_; }
  const GpOptions& options() const { return options_; }
  double jitter() const { return factor_.jitter; }
  double target_offset() const { return offset_; }
  double target_scale() const { return scale_; }
  int size() const { return raw_.size(); }
  int dim() const { return hyperparams_.dim(); }

  ParameterVector TransformInput(const ParameterVector& x) const;

 private:
  Dataset raw_;
  Dataset transformed_;
  KernelHyperparams hyperparams_;
  GpOptions options_;
  GramFactor factor_;
  Eigen::VectorXd alpha_;
  double offset_ = 0.0;
  double scale_ = 1.0;
};

}  // namespace bopest

#endif  // BOPEST_GP_H_
