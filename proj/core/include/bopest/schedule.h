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

#ifndef BOPEST_SCHEDULE_H_
#define BOPEST_SCHEDULE_H_

#include "bopest/pendulum.h"
#include "bopest/quadrotor.h"

namespace bopest {

// Time-varying quadrotor mass and inertia:
//   m(t) = 0.2 exp(-0.2 t) sin(1.5 t) + m0   t <= 3
//          1.85                              t <= 6
//          0.7 exp(-0.2 t) sin(1.5 t) + m0   t <= 9
//          2.10                              t <= 12
//          m0                                otherwise
//   J_i(t) = 3.0 (J0_i + m(t) r_i^2)
struct QuadrotorSchedule {
  QuadrotorParams nominal;

  double Mass(double t) const;
  QuadrotorParams TrueParams(double t) const;
};

// Mass and length jump from `before` to `after` at jump_time; friction and
// gravity stay fixed.
struct PendulumSchedule {
  PendulumParams before{1.75, 0.75, 0.1, 9.81};
  PendulumParams after{4.271, 0.981, 0.1, 9.81};
  double jump_time = 3.0;

  PendulumParams TrueParams(double t) const;
};

}  // namespace bopest

#endif  // BOPEST_SCHEDULE_H_
