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

#ifndef BOPEST_PENDULUM_H_
#define BOPEST_PENDULUM_H_

#include "bopest/integrator.h"

namespace bopest {

// Actuated planar pendulum with viscous friction:
//   phi'' = -(g / l) sin(phi) - (b / m) phi' + u / (m l)
struct PendulumParams {
  double mass = 1.75;      // kg
  double length = 0.75;    // m
  double friction = 0.1;   // N m s / rad
  double gravity = 9.81;   // m / s^2

  void Validate() const;
};

struct PendulumState {
  double angle = 0.0;  // rad
  double rate = 0.0;   // rad / s
};

struct PendulumGains {
  double kp = 16.0;
  double kd = 8.0;

  void Validate() const;
};

// Constant set-point reference.
struct PendulumReference {
  double angle = 0.0;
  double rate = 0.0;
};

// time derivative (phi', phi'') packed as a PendulumState
PendulumState PendulumDerivative(const PendulumState& x, double torque,
                                 const PendulumParams& p);

// Feedback-linearizing torque computed with the estimated parameters:
//   u = m l (kp e1 + kd e2) + m l ((g / l) sin(phi) + (b / m) phi')
double PendulumControl(const PendulumState& x, const PendulumReference& ref,
                       double t, const PendulumGains& gains,
                       const PendulumParams& estimate);

double PendulumEnergy(const PendulumState& x, const PendulumParams& p);

// One fixed step with zero-order-hold torque. Throws SimulationDiverged if
// the result is non-finite.
PendulumState StepPendulum(const PendulumState& x, double torque,
                           const PendulumParams& p, double dt,
                           Integrator integrator, double t = 0.0);

}  // namespace bopest

#endif  // BOPEST_PENDULUM_H_
