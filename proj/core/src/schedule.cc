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

#include "bopest/schedule.h"

#include <cmath>

namespace bopest {

double QuadrotorSchedule::Mass(double t) const {
  const double m = nominal.mass;
  const double wave = std::exp(-0.2 * t) * std::sin(1.5 * t);
  if (t <= 3.0) return 0.2 * wave + m;
  if (t <= 6.0) return 1.85;
  if (t <= 9.0) return 0.7 * wave + m;
  if (t <= 12.0) return 2.10;
  return m;
}

QuadrotorParams QuadrotorSchedule::TrueParams(double t) const {
  QuadrotorParams p = nominal;
  p.mass = Mass(t);
  p.inertia = 3.0 * (nominal.inertia.array() +
                     p.mass * nominal.inertial_offset.array().square())
                        .matrix();
  return p;
}

PendulumParams PendulumSchedule::TrueParams(double t) const {
  return t < jump_time ? before : after;
}

}  // namespace bopest
