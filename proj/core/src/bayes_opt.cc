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

#include "bopest/bayes_opt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bopest/error.h"
#include "bopest/nelder_mead.h"
#include "bopest/random.h"

namespace bopest {
namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
constexpr double kInvSqrt2 = 0.707106781186547524400844362105;

}  // namespace

double StandardNormalPdf(double z) {
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double StandardNormalCdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double ExpectedImprovement(double mean, double variance, double incumbent,
                           double xi) {
  const double sigma = variance > 0.0 ? std::sqrt(variance) : 0.0;
  if (sigma < 1e-12) return 0.0;
  const double improvement = incumbent - xi - mean;
  const double z = improvement / sigma;
  const double ei =
      improvement * StandardNormalCdf(z) + sigma * StandardNormalPdf(z);
  return std::max(0.0, ei);
}

double ExpectedImprovement(const GpModel& model, double incumbent,
                           const ParameterVector& q, double xi) {
  const Posterior p = model.Predict(q);
  return ExpectedImprovement(p.mean, p.variance, incumbent, xi);
}

void AcquisitionConfig::Validate() const {
  if (!(exploration_offset >= 0.0)) {
    throw InvalidArgument("exploration offset must be >= 0");
  }
  if (multistart_count < 1) {
    throw InvalidArgument("multistart_count must be >= 1");
  }
  if (candidate_pool_size < multistart_count) {
    throw InvalidArgument("candidate_pool_size must be >= multistart_count");
  }
  if (refine_max_evals < 1) {
    throw InvalidArgument("refine_max_evals must be >= 1");
  }
}

BoOptions DefaultBoOptions(int dim) {
  BoOptions options;
  options.gp.standardize_targets = true;
  options.initial_hyperparams.signal_variance = 1.0;
  options.initial_hyperparams.lengthscales = Eigen::VectorXd::Constant(dim, 0.2);
  options.initial_hyperparams.noise_variance = 1e-4;
  return options;
}

BoState::BoState(Domain domain, int budget, Dataset initial,
                 BoOptions options)
    : domain_(std::move(domain)),
      budget_(budget),
      options_(std::move(options)),
      hyperparams_(options_.initial_hyperparams),
      model_(Dataset{}, options_.initial_hyperparams.dim() == 0
                            ? KernelHyperparams::Unit(domain_.dim())
                            : options_.initial_hyperparams) {
  if (budget_ < 0) throw InvalidArgument("budget must be >= 0");
  if (hyperparams_.dim() == 0) {
    hyperparams_ = DefaultBoOptions(domain_.dim()).initial_hyperparams;
  }
  if (hyperparams_.dim() != domain_.dim()) {
    throw InvalidArgument("initial hyperparameters do not match domain");
  }
  options_.gp.input_domain = domain_;
  initial.Validate();
  model_ = GpModel(std::move(initial), hyperparams_, options_.gp);
  Rebuild(options_.fit_hyperparams && model_.size() >= 2);
}

double BoState::incumbent_value() const {
  return options_.incumbent_mode == IncumbentMode::kBestObserved
             ? incumbent_.best_observed
             : incumbent_.best_posterior_mean;
}

void BoState::Rebuild(bool refit) {
  Dataset data = model_.dataset();
  if (refit && data.size() >= 2) {
    FitOptions fit = options_.fit;
    fit.seed = DeriveSeed(options_.fit.seed,
                          static_cast<std::uint64_t>(data.size()));
    FitResult result;
    model_ = GpModel::Fit(std::move(data), hyperparams_, options_.gp, fit,
                          &result);
    if (result.failed) {
      warnings_.push_back("hyperparameter fit failed at n=" +
                          std::to_string(model_.size()));
    }
    hyperparams_ = model_.hyperparams();
    ++refits_;
  } else {
    model_ = GpModel(std::move(data), hyperparams_, options_.gp);
  }

  const Dataset& d = model_.dataset();
  if (d.empty()) {
    incumbent_ = Incumbent{};
    incumbent_.best_observed = std::numeric_limits<double>::infinity();
    incumbent_.best_posterior_mean = std::numeric_limits<double>::infinity();
    return;
  }
  int best = 0;
  double best_mean = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d.size(); ++i) {
    if (d.targets[i] < d.targets[best]) best = i;
    best_mean = std::min(best_mean, model_.Predict(d.inputs[i]).mean);
  }
  incumbent_.best_input = d.inputs[best];
  incumbent_.best_observed = d.targets[best];
  incumbent_.best_posterior_mean = best_mean;
}

Proposal ProposeNext(const BoState& state, const AcquisitionConfig& config) {
  config.Validate();
  if (state.model().size() < 1) {
    throw InvalidArgument("proposal needs at least one observation");
  }
  if (state.exhausted()) {
    throw InvalidArgument("evaluation budget exhausted");
  }
  const Domain& domain = state.domain();
  const int d = domain.dim();
  const double incumbent = state.incumbent_value();
  const double xi = config.exploration_offset;
  Rng rng(DeriveSeed(config.rng_seed,
                     static_cast<std::uint64_t>(state.iteration())));

  auto draw = [&]() {
    Eigen::VectorXd u(d);
    for (int j = 0; j < d; ++j) u[j] = Uniform01(rng);
    return domain.FromUnit(u);
  };

  const int pool = config.candidate_pool_size;
  std::vector<Eigen::VectorXd> candidates;
  std::vector<double> scores;
  candidates.reserve(pool);
  scores.reserve(pool);
  for (int i = 0; i < pool; ++i) {
    candidates.push_back(draw());
    scores.push_back(
        ExpectedImprovement(state.model(), incumbent, candidates.back(), xi));
  }

  std::vector<int> order(pool);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });

  Proposal best{candidates[order[0]], scores[order[0]], false};
  NelderMeadOptions nm;
  nm.max_evals = config.refine_max_evals;
  nm.f_tol = 1e-14;
  nm.x_tol = 1e-9;
  const Eigen::VectorXd steps = 0.05 * domain.width();
  auto negative_ei = [&](const Eigen::VectorXd& q) {
    return -ExpectedImprovement(state.model(), incumbent, q, xi);
  };
  for (int s = 0; s < config.multistart_count; ++s) {
    const NelderMeadResult run =
        MinimizeNelderMead(negative_ei, candidates[order[s]], domain.lower(),
                           domain.upper(), steps, nm);
    if (-run.f > best.expected_improvement) {
      best.point = run.x;
      best.expected_improvement = -run.f;
    }
  }

  if (!(best.expected_improvement > 0.0)) {
    best.point = draw();
    best.expected_improvement = 0.0;
    best.exploration_fallback = true;
  }
  best.point = domain.Clamp(best.point);
  return best;
}

BoState UpdateIncumbent(BoState state, ParameterVector point, double value) {
  if (!std::isfinite(value) || point.size() != state.domain().dim() ||
      !point.allFinite()) {
    state.warnings_.push_back("rejected non-finite observation at iteration " +
                              std::to_string(state.iteration_));
    return state;
  }
  Dataset data = state.model_.dataset();
  data.Add(std::move(point), value);
  state.model_ =
      GpModel(std::move(data), state.hyperparams_, state.options_.gp);
  ++state.iteration_;

  const int n = state.model_.size();
  const bool refit =
      state.options_.fit_hyperparams &&
      (n <= state.options_.refit_all_until ||
       (state.options_.refit_every > 0 && n % state.options_.refit_every == 0));
  state.Rebuild(refit);
  return state;
}

}  // namespace bopest
