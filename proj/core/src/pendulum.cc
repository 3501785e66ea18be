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

#include "bopest/pendulum.h"

#include <cmath>
#include <string>

#include "bopest/error.h"

namespace bopest {

void PendulumParams::Validate() const {
  if (!(mass > 0.0) || !(length > 0.0) || !(friction >= 0.0) ||
      !std::isfinite(mass + length + friction + gravity)) {
    throw InvalidArgument("pendulum needs m > 0, l > 0, b >= 0");
  }
}

void PendulumGains::Validate() const {
  if (!(kp > 0.0) || !(kd > 0.0)) {
    throw InvalidArgument("pendulum gains must be positive");
  }
}

PendulumState PendulumDerivative(const PendulumState& x, double torque,
                                 const PendulumParams& p) {
  return {x.rate, -(p.gravity / p.length) * std::sin(x.angle) -
                      (p.friction / p.mass) * x.rate +
                      torque / (p.mass * p.length)};
}

double PendulumControl(const PendulumState& x, const PendulumReference& ref,
                       double /*t*/, const PendulumGains& gains,
                       const PendulumParams& estimate) {
  const double e1 = ref.angle - x.angle;
  const double e2 = ref.rate - x.rate;
  const double ml = estimate.mass * estimate.length;
  return ml * (gains.kp * e1 + gains.kd * e2) +
         ml * ((estimate.gravity / estimate.length) * std::sin(x.angle) +
               (estimate.friction / estimate.mass) * x.rate);
}

double PendulumEnergy(const PendulumState& x, const PendulumParams& p) {
  const double l = p.length;
  return 0.5 * p.mass * l * l * x.rate * x.rate +
         p.mass * p.gravity * l * (1.0 - std::cos(x.angle));
}

PendulumState StepPendulum(const PendulumState& x, double torque,
                           const PendulumParams& p, double dt,
                           Integrator integrator, double t) {
  if (!(dt > 0.0)) throw InvalidArgument("step needs dt > 0");
  auto axpy = [](const PendulumState& a, double h, const PendulumState& d) {
    return PendulumState{a.angle + h * d.angle, a.rate + h * d.rate};
  };
  PendulumState next;
  if (integrator == Integrator::kEuler) {
    next = axpy(x, dt, PendulumDerivative(x, torque, p));
  } else {
    const PendulumState k1 = PendulumDerivative(x, torque, p);
    const PendulumState k2 =
        PendulumDerivative(axpy(x, 0.5 * dt, k1), torque, p);
    const PendulumState k3 =
        PendulumDerivative(axpy(x, 0.5 * dt, k2), torque, p);
    const PendulumState k4 = PendulumDerivative(axpy(x, dt, k3), torque, p);
    next = {x.angle + dt / 6.0 * (k1.angle + 2 * k2.angle + 2 * k3.angle +
                                  k4.angle),
            x.rate +
                dt / 6.0 * (k1.rate + 2 * k2.rate + 2 * k3.rate + k4.rate)};
  }
  if (!std::isfinite(next.angle) || !std::isfinite(next.rate)) {
    throw SimulationDiverged(t, "pendulum state non-finite at t=" +
                                    std::to_string(t));
  }
  return next;
}

}  // namespace bopest
