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

#ifndef BOPEST_QUADROTOR_H_
#define BOPEST_QUADROTOR_H_

#include <optional>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "bopest/integrator.h"

namespace bopest {

// Axis convention: e3 points down, aligned with gravity, so hover is
// F = m g with R = I.
struct QuadrotorParams {
  double mass = 1.25;                                  // kg
  Eigen::Vector3d inertia = {1.1, 1.1, 2.2};           // diag(J), kg m^2
  double gravity = 9.81;                               // m / s^2
  Eigen::Vector3d inertial_offset = {0.2, 0.2, 0.2};   // m, schedule only

  void Validate() const;
};

struct QuadrotorState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d rate = Eigen::Vector3d::Zero();  // body frame
};

struct QuadrotorDerivative {
  Eigen::Vector3d position;
  Eigen::Vector3d velocity;
  Eigen::Matrix3d rotation;
  Eigen::Vector3d rate;
};

struct QuadrotorInput {
  double thrust = 0.0;
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();
};

// Defaults keep kr, scale kR and kOmega by the 3x inertia factor of the
// schedule and raise the horizontal velocity gain to the vertical one. The
// unscaled set {kv = (0.5, 0.5, 2), kR = 30, kOmega = (5, 10, 20)} does not
// track the sinusoidal reference even with exact parameters.
struct QuadrotorGains {
  Eigen::Vector3d kr = {5.0, 5.0, 5.0};
  Eigen::Vector3d kv = {2.0, 2.0, 2.0};
  Eigen::Vector3d kR = {90.0, 90.0, 90.0};
  Eigen::Vector3d kOmega = {15.0, 30.0, 60.0};

  void Validate() const;
};

// r_d(t) = offset + amplitude .* sin(frequency .* t); yaw either tracks the
// horizontal heading atan2(y_d, x_d) or stays fixed.
struct QuadrotorReference {
  enum class YawMode { kHeading, kFixed };

  Eigen::Vector3d amplitude = {4.0, 5.0, 2.0};
  Eigen::Vector3d frequency = {0.8, 0.4, 0.4};
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
  YawMode yaw_mode = YawMode::kHeading;
  double fixed_yaw = 0.0;

  struct Sample {
    Eigen::Vector3d position;
    Eigen::Vector3d velocity;
    Eigen::Vector3d acceleration;
    double yaw = 0.0;
  };

  Sample Evaluate(double t) const;

  static QuadrotorReference Hover(const Eigen::Vector3d& position);
};

// v' = g e3 - (F / m) R e3,  W' = J^-1 (M - W x J W),  r' = v,  R' = R hat(W)
QuadrotorDerivative QuadrotorDynamics(const QuadrotorState& x,
                                      const QuadrotorInput& u,
                                      const QuadrotorParams& p);

// One fixed step with zero-order-hold input; R is re-orthonormalized.
// Throws SimulationDiverged if the result is non-finite.
QuadrotorState StepQuadrotor(const QuadrotorState& x, const QuadrotorInput& u,
                             const QuadrotorParams& p, double dt,
                             Integrator integrator, double t = 0.0);

// Geometric tracking controller on SE(3). The desired attitude is built from
// the desired force direction and the reference yaw; the desired body rate
// and its derivative come from central differences of R_d with the current
// tracking errors held fixed. Stateful only through the last valid R_d,
// which is reused when the desired force degenerates.
class GeometricController {
 public:
  struct Output {
    QuadrotorInput input;
    Eigen::Matrix3d desired_rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d position_error = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity_error = Eigen::Vector3d::Zero();
    Eigen::Vector3d attitude_error = Eigen::Vector3d::Zero();
    Eigen::Vector3d rate_error = Eigen::Vector3d::Zero();
    bool held_attitude = false;      // desired force norm < 1e-9
    bool dropped_feedforward = false;  // R_d jumped within the stencil
  };

  GeometricController(QuadrotorGains gains, QuadrotorReference reference,
                      double difference_step);

  Output Compute(const QuadrotorState& x, double t,
                 const QuadrotorParams& estimate);

  const QuadrotorReference& reference() const { return reference_; }
  const QuadrotorGains& gains() const { return gains_; }
  void Reset() { last_desired_.reset(); }

 private:
  // returns nullopt when the desired force is degenerate
  std::optional<Eigen::Matrix3d> DesiredRotation(
      double t, const Eigen::Vector3d& feedback, double mass,
      double gravity) const;

  QuadrotorGains gains_;
  QuadrotorReference reference_;
  double step_;
  std::optional<Eigen::Matrix3d> last_desired_;
};

// e_R = 1/2 (R_d^T R - R^T R_d)^vee
Eigen::Vector3d AttitudeError(const Eigen::Matrix3d& r,
                              const Eigen::Matrix3d& desired);

}  // namespace bopest

#endif  // BOPEST_QUADROTOR_H_
