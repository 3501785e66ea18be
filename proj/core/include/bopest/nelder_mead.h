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

#ifndef BOPEST_NELDER_MEAD_H_
#define BOPEST_NELDER_MEAD_H_

#include <functional>

#include <Eigen/Core>

namespace bopest {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct NelderMeadOptions {
  int max_evals = 200;
  // stop once the simplex spread in f and in x both fall below these
  double f_tol = 1e-10;
  double x_tol = 1e-10;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int evals = 0;
};

// Box-constrained Nelder-Mead. Trial points are projected onto
// [lower, upper]; non-finite objective values are treated as +inf. The start
// point is always evaluated, so the result is never worse than f(x0).
// `steps` gives the initial simplex edge per coordinate; an edge that would
// leave the box is flipped to the other side.
NelderMeadResult MinimizeNelderMead(const Objective& f,
                                    const Eigen::VectorXd& x0,
                                    const Eigen::VectorXd& lower,
                                    const Eigen::VectorXd& upper,
                                    const Eigen::VectorXd& steps,
                                    const NelderMeadOptions& options = {});

}  // namespace bopest

#endif  // BOPEST_NELDER_MEAD_H_
