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

#ifndef BOPEST_BASELINES_H_
#define BOPEST_BASELINES_H_

#include <optional>
#include <string_view>

#include "bopest/domain.h"
#include "bopest/nelder_mead.h"

namespace bopest {

// Local solvers started from the nominal parameters. They stand in for the
// interior-point and SQP comparisons and are labelled by what they are.
enum class BaselineMethod { kLocalGradient, kSimplex };

std::string_view BaselineMethodName(BaselineMethod method);
std::optional<BaselineMethod> ParseBaselineMethod(std::string_view name);

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::kLocalGradient;
  ParameterVector start;
  int max_evals = 35;
  // central-difference step as a fraction of each domain width
  double fd_step_fraction = 1e-4;
  // first trial step of the projected gradient, fraction of the box diagonal
  double initial_step_fraction = 0.1;
  // initial simplex edge as a fraction of |start_i| (5%, as fminsearch)
  double simplex_step_fraction = 0.05;
  double x_tol = 1e-8;
  double f_tol = 1e-12;

  void Validate(const Domain& domain) const;
};

struct BaselineResult {
  ParameterVector theta;
  double objective = 0.0;
  int evaluations = 0;
  double wall_seconds = 0.0;
};

// Minimizes `objective` over the domain from cfg.start within cfg.max_evals
// evaluations. Budget exhaustion returns the best point seen; non-finite
// objective values count as +inf.
BaselineResult SolveBaseline(const Objective& objective, const Domain& domain,
                             const BaselineConfig& cfg);

}  // namespace bopest

#endif  // BOPEST_BASELINES_H_
