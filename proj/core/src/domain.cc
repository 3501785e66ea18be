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

#include "bopest/domain.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "bopest/error.h"
#include "bopest/integrator.h"

namespace bopest {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return "invalid-argument";
    case ErrorKind::kNumericalInstability:
      return "numerical-instability";
    case ErrorKind::kSimulationDiverged:
      return "simulation-diverged";
    case ErrorKind::kInvalidParameter:
      return "invalid-parameter";
    case ErrorKind::kInvalidConfig:
      return "invalid-config";
  }
  return "unknown";
}

std::string_view IntegratorName(Integrator integrator) {
  return integrator == Integrator::kEuler ? "euler" : "rk4";
}

std::optional<Integrator> ParseIntegrator(std::string_view name) {
  if (name == "euler") return Integrator::kEuler;
  if (name == "rk4") return Integrator::kRk4;
  return std::nullopt;
}

Domain::Domain(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() < 1 || lower_.size() != upper_.size()) {
    throw InvalidArgument("domain bounds must be non-empty and equal length");
  }
  for (int i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i]) || !std::isfinite(lower_[i]) ||
        !std::isfinite(upper_[i])) {
      throw InvalidArgument("domain requires finite lower[" +
                            std::to_string(i) + "] < upper[" +
                            std::to_string(i) + "]");
    }
  }
}

Domain Domain::UnitCube(int dim) {
  return Domain(Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim));
}

bool Domain::Contains(const ParameterVector& x) const {
  if (x.size() != lower_.size()) return false;
  return (x.array() >= lower_.array()).all() &&
         (x.array() <= upper_.array()).all();
}

ParameterVector Domain::Clamp(const ParameterVector& x) const {
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

ParameterVector Domain::ToUnit(const ParameterVector& x) const {
  return ((x - lower_).array() / (upper_ - lower_).array()).matrix();
}

ParameterVector Domain::FromUnit(const ParameterVector& u) const {
  return lower_ + (u.array() * (upper_ - lower_).array()).matrix();
}

}  // namespace bopest
