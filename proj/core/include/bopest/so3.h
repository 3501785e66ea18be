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

#ifndef BOPEST_SO3_H_
#define BOPEST_SO3_H_

#include <Eigen/Core>

namespace bopest {

// hat(a) b = a x b
Eigen::Matrix3d Hat(const Eigen::Vector3d& a);

// Inverse of Hat. Throws InvalidArgument if |S + S^T| >= 1e-9.
Eigen::Vector3d Vee(const Eigen::Matrix3d& skew);

// Nearest rotation (polar factor) of a near-orthogonal matrix.
Eigen::Matrix3d Orthonormalize(const Eigen::Matrix3d& m);

// |R^T R - I|_F
double OrthonormalityError(const Eigen::Matrix3d& r);

// Angle of the relative rotation a^T b, in [0, pi].
double RotationAngle(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b);

}  // namespace bopest

#endif  // BOPEST_SO3_H_
