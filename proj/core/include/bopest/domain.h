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

#ifndef BOPEST_DOMAIN_H_
#define BOPEST_DOMAIN_H_

#include <Eigen/Core>

namespace bopest {

// A point in parameter space. Units depend on the plant (kg, m, kg m^2).
using ParameterVector = Eigen::VectorXd;

// Axis-aligned search box with lower[i] < upper[i].
class Domain {
 public:
  Domain(Eigen::VectorXd lower, Eigen::VectorXd upper);

  static Domain UnitCube(int dim);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  Eigen::VectorXd width() const { return upper_ - lower_; }
  double diagonal() const { return width().norm(); }

  bool Contains(const ParameterVector& x) const;
  ParameterVector Clamp(const ParameterVector& x) const;

  // affine maps between the box and [0, 1]^d
  ParameterVector ToUnit(const ParameterVector& x) const;
  ParameterVector FromUnit(const ParameterVector& u) const;

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

}  // namespace bopest

#endif  // BOPEST_DOMAIN_H_
