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

#include "bopest/gp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "bopest/error.h"
#include "bopest/nelder_mead.h"
#include "bopest/random.h"

namespace bopest {
namespace {

constexpr double kSqrt5 = 2.23606797749978969640917366873;
constexpr double kLog2Pi = 1.83787706640934548356065947281;

void CheckDim(const ParameterVector& x, const KernelHyperparams& h) {
  if (x.size() != h.lengthscales.size()) {
    throw InvalidArgument("input dimension " + std::to_string(x.size()) +
                          " does not match kernel dimension " +
                          std::to_string(h.lengthscales.size()));
  }
}

double Matern52Unchecked(const ParameterVector& a, const ParameterVector& b,
                         const KernelHyperparams& h) {
  const double r =
      ((a - b).array() / h.lengthscales.array()).matrix().norm();
  const double sr = kSqrt5 * r;
  return h.signal_variance * (1.0 + sr + sr * sr / 3.0) * std::exp(-sr);
}

}  // namespace

KernelHyperparams KernelHyperparams::Unit(int dim) {
  KernelHyperparams h;
  h.signal_variance = 1.0;
  h.lengthscales = Eigen::VectorXd::Ones(dim);
  h.noise_variance = 0.0;
  return h;
}

void KernelHyperparams::Validate() const {
  if (!(signal_variance > 0.0) || !std::isfinite(signal_variance)) {
    throw InvalidArgument("signal variance must be positive");
  }
  if (lengthscales.size() < 1) {
    throw InvalidArgument("at least one lengthscale is required");
  }
  for (int i = 0; i < lengthscales.size(); ++i) {
    if (!(lengthscales[i] > 0.0) || !std::isfinite(lengthscales[i])) {
      throw InvalidArgument("lengthscales must be positive");
    }
  }
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
    throw InvalidArgument("noise variance must be non-negative");
  }
}

double Matern52(const ParameterVector& a, const ParameterVector& b,
                const KernelHyperparams& h) {
  CheckDim(a, h);
  CheckDim(b, h);
  return Matern52Unchecked(a, b, h);
}

void Dataset::Add(ParameterVector x, double y) {
  inputs.push_back(std::move(x));
  targets.push_back(y);
}

void Dataset::Validate() const {
  if (inputs.size() != targets.size()) {
    throw InvalidArgument("dataset inputs and targets differ in length");
  }
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (!std::isfinite(targets[i]) || !inputs[i].allFinite()) {
      throw InvalidArgument("dataset entry " + std::to_string(i) +
                            " is not finite");
    }
    if (inputs[i].size() != inputs.front().size()) {
      throw InvalidArgument("dataset inputs differ in dimension");
    }
  }
}

Eigen::VectorXd GramFactor::Solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd y = lower.triangularView<Eigen::Lower>().solve(b);
  return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

double GramFactor::LogDeterminant() const {
  return 2.0 * lower.diagonal().array().log().sum();
}

Eigen::MatrixXd KernelMatrix(const std::vector<ParameterVector>& inputs,
                             const KernelHyperparams& h) {
  const int n = static_cast<int>(inputs.size());
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    CheckDim(inputs[i], h);
    k(i, i) = h.signal_variance;
    for (int j = 0; j < i; ++j) {
      k(i, j) = k(j, i) = Matern52Unchecked(inputs[i], inputs[j], h);
    }
  }
  return k;
}

GramFactor BuildGram(const std::vector<ParameterVector>& inputs,
                     const KernelHyperparams& h, double jitter,
                     double max_jitter) {
  if (inputs.empty()) throw InvalidArgument("Gram matrix of no points");
  if (!(jitter >= 0.0)) throw InvalidArgument("jitter must be >= 0");
  h.Validate();

  const Eigen::MatrixXd k = KernelMatrix(inputs, h);
  const int n = static_cast<int>(k.rows());
  double current = jitter;
  while (true) {
    Eigen::MatrixXd a = k;
    a.diagonal().array() += h.noise_variance + current;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      GramFactor factor;
      factor.lower = llt.matrixL();
      if (factor.lower.diagonal().allFinite() &&
          (factor.lower.diagonal().array() > 0.0).all()) {
        factor.jitter = current;
        return factor;
      }
    }
    current = current > 0.0 ? current * 10.0 : 1e-10 * h.signal_variance;
    if (current > max_jitter * (1.0 + 1e-12)) {
      throw NumericalInstability("Cholesky of " + std::to_string(n) + "x" +
                                 std::to_string(n) +
                                 " Gram matrix failed at jitter cap");
    }
  }
}

GramFactor BuildGram(const std::vector<ParameterVector>& inputs,
                     const KernelHyperparams& h) {
  return BuildGram(inputs, h, 1e-10 * h.signal_variance,
                   1e-4 * h.signal_variance);
}

double LogMarginalLikelihood(const Dataset& data, const KernelHyperparams& h) {
  if (data.empty()) throw InvalidArgument("log likelihood of empty dataset");
  const GramFactor factor = BuildGram(data.inputs, h);
  const Eigen::Map<const Eigen::VectorXd> y(data.targets.data(), data.size());
  const Eigen::VectorXd alpha = factor.Solve(y);
  return -0.5 * y.dot(alpha) - 0.5 * factor.LogDeterminant() -
         0.5 * data.size() * kLog2Pi;
}

namespace {

struct LogSpace {
  int dim;
  bool fit_noise;
  double fixed_noise;

  int size() const { return 1 + dim + (fit_noise ? 1 : 0); }

  Eigen::VectorXd Encode(const KernelHyperparams& h) const {
    Eigen::VectorXd p(size());
    p[0] = std::log(h.signal_variance);
    p.segment(1, dim) = h.lengthscales.array().log();
    if (fit_noise) p[dim + 1] = std::log(h.noise_variance);
    return p;
  }

  KernelHyperparams Decode(const Eigen::VectorXd& p) const {
    KernelHyperparams h;
    h.signal_variance = std::exp(p[0]);
    h.lengthscales = p.segment(1, dim).array().exp();
    h.noise_variance = fit_noise ? std::exp(p[dim + 1]) : fixed_noise;
    return h;
  }
};

}  // namespace

FitResult FitHyperparams(const Dataset& data, const KernelHyperparams& init,
                         const FitOptions& options) {
  data.Validate();
  init.Validate();
  if (data.size() < 2) {
    throw InvalidArgument("hyperparameter fitting needs at least 2 points");
  }
  if (options.restarts < 1 || options.max_evals_per_restart < 1) {
    throw InvalidArgument("fit needs restarts >= 1 and a positive budget");
  }
  const int d = init.dim();
  const HyperparamBounds& b = options.bounds;
  const LogSpace space{d, options.fit_noise, init.noise_variance};

  Eigen::VectorXd lower(space.size()), upper(space.size());
  lower[0] = std::log(b.min_signal_variance);
  upper[0] = std::log(b.max_signal_variance);
  lower.segment(1, d).setConstant(std::log(b.min_lengthscale));
  upper.segment(1, d).setConstant(std::log(b.max_lengthscale));
  if (options.fit_noise) {
    lower[d + 1] = std::log(b.min_noise_variance);
    upper[d + 1] = std::log(b.max_noise_variance);
  }

  FitResult result;
  result.hyperparams = init;
  double init_lml = -std::numeric_limits<double>::infinity();
  try {
    init_lml = LogMarginalLikelihood(data, init);
  } catch (const NumericalInstability&) {
  }
  result.initial_log_marginal_likelihood = init_lml;
  result.log_marginal_likelihood = init_lml;

  int evaluations = 0;
  auto negative_lml = [&](const Eigen::VectorXd& p) {
    ++evaluations;
    try {
      return -LogMarginalLikelihood(data, space.Decode(p));
    } catch (const NumericalInstability&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  NelderMeadOptions nm;
  nm.max_evals = options.max_evals_per_restart;
  nm.f_tol = 1e-9;
  nm.x_tol = 1e-6;
  const Eigen::VectorXd steps = 0.1 * (upper - lower);

  Eigen::VectorXd init_point = space.Encode(init);
  for (int i = 0; i < init_point.size(); ++i) {
    if (!std::isfinite(init_point[i])) init_point[i] = lower[i];
  }

  double best_f = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_p;
  for (int r = 0; r < options.restarts; ++r) {
    Eigen::VectorXd start;
    if (r == 0) {
      start = init_point.cwiseMax(lower).cwiseMin(upper);
    } else {
      Rng rng(DeriveSeed(options.seed, static_cast<std::uint64_t>(r)));
      start.resize(space.size());
      for (int i = 0; i < start.size(); ++i) {
        start[i] = lower[i] + Uniform01(rng) * (upper[i] - lower[i]);
      }
    }
    const NelderMeadResult run =
        MinimizeNelderMead(negative_lml, start, lower, upper, steps, nm);
    // strict comparison: ties keep the lowest restart index
    if (run.f < best_f) {
      best_f = run.f;
      best_p = run.x;
    }
  }
  result.evaluations = evaluations;

  if (!std::isfinite(best_f)) {
    result.failed = true;
    return result;
  }
  if (-best_f > init_lml) {
    result.hyperparams = space.Decode(best_p);
    result.log_marginal_likelihood = -best_f;
  }
  return result;
}

GpModel::GpModel(Dataset data, KernelHyperparams hyperparams,
                 GpOptions options)
    : raw_(std::move(data)),
      hyperparams_(std::move(hyperparams)),
      options_(std::move(options)) {
  raw_.Validate();
  hyperparams_.Validate();
  if (options_.input_domain &&
      options_.input_domain->dim() != hyperparams_.dim()) {
    throw InvalidArgument("input domain dimension does not match kernel");
  }

  transformed_.inputs.reserve(raw_.size());
  for (const ParameterVector& x : raw_.inputs) {
    CheckDim(x, hyperparams_);
    transformed_.inputs.push_back(TransformInput(x));
  }

  const int n = raw_.size();
  if (options_.standardize_targets && n > 0) {
    double mean = 0.0;
    for (double y : raw_.targets) mean += y;
    mean /= n;
    double var = 0.0;
    for (double y : raw_.targets) var += (y - mean) * (y - mean);
    const double sd = std::sqrt(var / n);
    offset_ = mean;
    scale_ = sd > 1e-12 ? sd : 1.0;
  }
  transformed_.targets.reserve(n);
  for (double y : raw_.targets) {
    transformed_.targets.push_back((y - offset_) / scale_);
  }

  if (n > 0) {
    factor_ = BuildGram(transformed_.inputs, hyperparams_);
    const Eigen::Map<const Eigen::VectorXd> y(transformed_.targets.data(), n);
    alpha_ = factor_.Solve(y);
  }
}

GpModel GpModel::Fit(Dataset data, const KernelHyperparams& init,
                     GpOptions options, const FitOptions& fit_options,
                     FitResult* fit_result) {
  GpModel staged(std::move(data), init, std::move(options));
  if (staged.size() < 2) {
    if (fit_result) {
      *fit_result = FitResult{init, 0.0, 0.0, 0, false};
    }
    return staged;
  }
  FitResult fit = FitHyperparams(staged.transformed_, init, fit_options);
  if (fit_result) *fit_result = fit;
  return GpModel(std::move(staged.raw_), fit.hyperparams,
                 std::move(staged.options_));
}

ParameterVector GpModel::TransformInput(const ParameterVector& x) const {
  return options_.input_domain ? options_.input_domain->ToUnit(x) : x;
}

Posterior GpModel::Predict(const ParameterVector& q) const {
  CheckDim(q, hyperparams_);
  Posterior out;
  const double var_scale = scale_ * scale_;
  if (raw_.empty()) {
    out.mean = offset_;
    out.raw_variance = hyperparams_.signal_variance * var_scale;
    out.variance = out.raw_variance;
    return out;
  }
  const ParameterVector z = TransformInput(q);
  const int n = raw_.size();
  Eigen::VectorXd k(n);
  for (int i = 0; i < n; ++i) {
    k[i] = Matern52Unchecked(transformed_.inputs[i], z, hyperparams_);
  }
  const Eigen::VectorXd v =
      factor_.lower.triangularView<Eigen::Lower>().solve(k);
  out.mean = offset_ + scale_ * k.dot(alpha_);
  out.raw_variance = var_scale * (hyperparams_.signal_variance - v.squaredNorm());
  out.variance = std::max(0.0, out.raw_variance);
  return out;
}

double GpModel::LogMarginalLikelihood() const {
  return bopest::LogMarginalLikelihood(transformed_, hyperparams_);
}

}  // namespace bopest
