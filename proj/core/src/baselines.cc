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

#include "bopest/baselines.h"

#include <chrono>
#include <cmath>
#include <limits>

#include "bopest/error.h"

namespace bopest {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Projected steepest descent with central-difference gradients in unit-box
// coordinates and a doubling/halving step.
BaselineResult LocalGradient(const Objective& objective, const Domain& domain,
                             const BaselineConfig& cfg) {
  const int d = domain.dim();
  int evals = 0;
  auto f = [&](const Eigen::VectorXd& z) {
    ++evals;
    const double v = objective(domain.FromUnit(z));
    return std::isfinite(v) ? v : kInf;
  };
  auto project = [](const Eigen::VectorXd& z) {
    return z.cwiseMax(0.0).cwiseMin(1.0);
  };

  Eigen::VectorXd z = project(domain.ToUnit(cfg.start));
  double fz = f(z);
  const double h = cfg.fd_step_fraction;
  const double max_step = std::sqrt(static_cast<double>(d));
  double step = cfg.initial_step_fraction * max_step;

  while (evals + 2 * d + 1 <= cfg.max_evals) {
    Eigen::VectorXd grad(d);
    for (int i = 0; i < d; ++i) {
      Eigen::VectorXd hi = z, lo = z;
      hi[i] = std::min(1.0, z[i] + h);
      lo[i] = std::max(0.0, z[i] - h);
      grad[i] = (f(hi) - f(lo)) / (hi[i] - lo[i]);
    }
    const double norm = grad.norm();
    if (!std::isfinite(norm) || norm == 0.0) break;
    const Eigen::VectorXd direction = -grad / norm;

    bool accepted = false;
    while (evals < cfg.max_evals && step >= cfg.x_tol) {
      const Eigen::VectorXd trial = project(z + step * direction);
      if ((trial - z).norm() < cfg.x_tol) {
        step = 0.0;
        break;
      }
      const double ft = f(trial);
      if (ft < fz - cfg.f_tol) {
        z = trial;
        fz = ft;
        step = std::min(2.0 * step, max_step);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {domain.FromUnit(z), fz, evals, 0.0};
}

BaselineResult Simplex(const Objective& objective, const Domain& domain,
                       const BaselineConfig& cfg) {
  Eigen::VectorXd steps = cfg.simplex_step_fraction * cfg.start.cwiseAbs();
  for (int i = 0; i < steps.size(); ++i) {
    if (steps[i] == 0.0) steps[i] = 0.00025;
  }
  NelderMeadOptions nm;
  nm.max_evals = cfg.max_evals;
  nm.x_tol = cfg.x_tol;
  nm.f_tol = cfg.f_tol;
  const NelderMeadResult run = MinimizeNelderMead(
      objective, cfg.start, domain.lower(), domain.upper(), steps, nm);
  return {run.x, run.f, run.evals, 0.0};
}

}  // namespace

std::string_view BaselineMethodName(BaselineMethod method) {
  return method == BaselineMethod::kLocalGradient ? "local-gradient"
                                                  : "simplex";
}

std::optional<BaselineMethod> ParseBaselineMethod(std::string_view name) {
  if (name == "local-gradient") return BaselineMethod::kLocalGradient;
  if (name == "simplex") return BaselineMethod::kSimplex;
  return std::nullopt;
}

void BaselineConfig::Validate(const Domain& domain) const {
  if (start.size() != domain.dim() || !domain.Contains(start)) {
    throw InvalidArgument("baseline start must lie inside the domain");
  }
  if (max_evals < 1) throw InvalidArgument("baseline budget must be >= 1");
  if (!(fd_step_fraction > 0.0) || !(initial_step_fraction > 0.0) ||
      !(simplex_step_fraction > 0.0)) {
    throw InvalidArgument("baseline step sizes must be positive");
  }
}

BaselineResult SolveBaseline(const Objective& objective, const Domain& domain,
                             const BaselineConfig& cfg) {
  cfg.Validate(domain);
  const auto start = std::chrono::steady_clock::now();
  BaselineResult result = cfg.method == BaselineMethod::kLocalGradient
                              ? LocalGradient(objective, domain, cfg)
                              : Simplex(objective, domain, cfg);
  result.theta = domain.Clamp(result.theta);
  result.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return result;
}

}  // namespace bopest
