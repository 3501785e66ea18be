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

#ifndef BOPEST_BAYES_OPT_H_
#define BOPEST_BAYES_OPT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bopest/domain.h"
#include "bopest/gp.h"

namespace bopest {

double StandardNormalPdf(double z);
double StandardNormalCdf(double z);

// Closed-form expected improvement for minimization:
//   EI = (best - xi - mu) Phi(z) + sigma phi(z),  z = (best - xi - mu) / sigma
// Returns 0 when sigma < 1e-12.
double ExpectedImprovement(double mean, double variance, double incumbent,
                           double xi);

double ExpectedImprovement(const GpModel& model, double incumbent,
                           const ParameterVector& q, double xi);

struct AcquisitionConfig {
  double exploration_offset = 0.0;  // xi
  int multistart_count = 8;
  int candidate_pool_size = 1024;
  int refine_max_evals = 60;
  std::uint64_t rng_seed = 0;

  void Validate() const;
};

struct Incumbent {
  ParameterVector best_input;
  double best_observed = 0.0;
  double best_posterior_mean = 0.0;
};

enum class IncumbentMode { kBestObserved, kBestPosteriorMean };

struct BoOptions {
  GpOptions gp;  // input_domain is filled from the BoState domain
  FitOptions fit;
  KernelHyperparams initial_hyperparams;
  IncumbentMode incumbent_mode = IncumbentMode::kBestObserved;
  // Refit every update while n <= refit_all_until, then on every
  // refit_every-th point.
  int refit_all_until = 15;
  int refit_every = 5;
  bool fit_hyperparams = true;
};

// Default options for a d-dimensional problem: normalized inputs,
// standardized targets, lengthscales 0.2 in unit-cube coordinates.
BoOptions DefaultBoOptions(int dim);

class BoState {
 public:
  // `initial` may be empty; the model then reports the prior.
  BoState(Domain domain, int budget, Dataset initial, BoOptions options);

  const GpModel& model() const { return model_; }
  const Domain& domain() const { return domain_; }
  const Incumbent& incumbent() const { return incumbent_; }
  const BoOptions& options() const { return options_; }
  int iteration() const { return iteration_; }
  int budget() const { return budget_; }
  bool exhausted() const { return iteration_ >= budget_; }
  // Value EI improves on, per the incumbent mode.
  double incumbent_value() const;
  const std::vector<std::string>& warnings() const { return warnings_; }
  int refits() const { return refits_; }

 private:
  friend BoState UpdateIncumbent(BoState state, ParameterVector point,
                                 double value);
  void Rebuild(bool refit);

  Domain domain_;
  int budget_ = 0;
  int iteration_ = 0;
  BoOptions options_;
  KernelHyperparams hyperparams_;
  GpModel model_;
  Incumbent incumbent_;
  std::vector<std::string> warnings_;
  int refits_ = 0;
};

struct Proposal {
  ParameterVector point;
  double expected_improvement = 0.0;
  bool exploration_fallback = false;
};

// Maximizes EI over the domain: a seeded uniform candidate pool, then bounded
// Nelder-Mead refinement from the best multistart_count candidates. Ties go
// to the lowest candidate index.
Proposal ProposeNext(const BoState& state, const AcquisitionConfig& config);

// Appends (point, value), refits per cadence and recomputes the incumbent.
// A non-finite value is rejected: the state is returned unchanged apart from
// a recorded warning.
BoState UpdateIncumbent(BoState state, ParameterVector point, double value);

}  // namespace bopest

#endif  // BOPEST_BAYES_OPT_H_
