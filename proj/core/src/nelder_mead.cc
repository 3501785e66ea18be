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

#include "bopest/nelder_mead.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "bopest/error.h"

namespace bopest {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Counts evaluations, projects onto the box and keeps the best point seen.
class BoundedEvaluator {
 public:
  BoundedEvaluator(const Objective& f, const Eigen::VectorXd& lower,
                   const Eigen::VectorXd& upper, int budget)
      : f_(f), lower_(lower), upper_(upper), budget_(budget) {}

  bool exhausted() const { return evals_ >= budget_; }
  int evals() const { return evals_; }

  Eigen::VectorXd Project(const Eigen::VectorXd& x) const {
    return x.cwiseMax(lower_).cwiseMin(upper_);
  }

  double operator()(const Eigen::VectorXd& x) {
    ++evals_;
    double value = f_(x);
    if (!std::isfinite(value)) value = kInf;
    if (best_x_.size() == 0 || value < best_f_) {
      best_f_ = value;
      best_x_ = x;
    }
    return value;
  }

  const Eigen::VectorXd& best_x() const { return best_x_; }
  double best_f() const { return best_f_; }

 private:
  const Objective& f_;
  const Eigen::VectorXd& lower_;
  const Eigen::VectorXd& upper_;
  int budget_;
  int evals_ = 0;
  Eigen::VectorXd best_x_;
  double best_f_ = kInf;
};

}  // namespace

NelderMeadResult MinimizeNelderMead(const Objective& f,
                                    const Eigen::VectorXd& x0,
                                    const Eigen::VectorXd& lower,
                                    const Eigen::VectorXd& upper,
                                    const Eigen::VectorXd& steps,
                                    const NelderMeadOptions& options) {
  const int n = static_cast<int>(x0.size());
  if (n < 1 || lower.size() != n || upper.size() != n || steps.size() != n) {
    throw InvalidArgument("Nelder-Mead dimension mismatch");
  }
  if (options.max_evals < 1) {
    throw InvalidArgument("Nelder-Mead needs max_evals >= 1");
  }

  BoundedEvaluator eval(f, lower, upper, options.max_evals);
  std::vector<Eigen::VectorXd> simplex;
  std::vector<double> values;
  simplex.reserve(n + 1);

  const Eigen::VectorXd start = eval.Project(x0);
  simplex.push_back(start);
  values.push_back(eval(start));

  for (int i = 0; i < n && !eval.exhausted(); ++i) {
    Eigen::VectorXd v = start;
    double step = steps[i];
    if (step == 0.0) step = 1e-3 * (upper[i] - lower[i]);
    v[i] += step;
    if (v[i] > upper[i] || v[i] < lower[i]) v[i] = start[i] - step;
    v = eval.Project(v);
    simplex.push_back(v);
    values.push_back(eval(v));
  }

  std::vector<int> order(simplex.size());
  while (!eval.exhausted() && static_cast<int>(simplex.size()) == n + 1) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] < values[b]; });
    {
      std::vector<Eigen::VectorXd> s;
      std::vector<double> v;
      for (int idx : order) {
        s.push_back(simplex[idx]);
        v.push_back(values[idx]);
      }
      simplex.swap(s);
      values.swap(v);
    }

    double x_spread = 0.0;
    for (int i = 1; i <= n; ++i) {
      x_spread = std::max(x_spread,
                          (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
    }
    const double f_spread = values[n] - values[0];
    if (std::isfinite(f_spread) && f_spread <= options.f_tol &&
        x_spread <= options.x_tol) {
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[i];
    centroid /= n;
    const Eigen::VectorXd& worst = simplex[n];

    const Eigen::VectorXd reflected =
        eval.Project(centroid + (centroid - worst));
    const double f_reflected = eval(reflected);

    if (f_reflected < values[0]) {
      if (eval.exhausted()) break;
      const Eigen::VectorXd expanded =
          eval.Project(centroid + 2.0 * (centroid - worst));
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[n] = expanded;
        values[n] = f_expanded;
      } else {
        simplex[n] = reflected;
        values[n] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[n - 1]) {
      simplex[n] = reflected;
      values[n] = f_reflected;
      continue;
    }
    if (eval.exhausted()) break;

    // contraction, outside if the reflection improved on the worst point
    const bool outside = f_reflected < values[n];
    const Eigen::VectorXd contracted =
        outside ? eval.Project(centroid + 0.5 * (reflected - centroid))
                : eval.Project(centroid + 0.5 * (worst - centroid));
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, values[n])) {
      simplex[n] = contracted;
      values[n] = f_contracted;
      continue;
    }

    // shrink toward the best vertex
    for (int i = 1; i <= n && !eval.exhausted(); ++i) {
      simplex[i] = eval.Project(simplex[0] + 0.5 * (simplex[i] - simplex[0]));
      values[i] = eval(simplex[i]);
    }
  }

  return {eval.best_x(), eval.best_f(), eval.evals()};
}

}  // namespace bopest
