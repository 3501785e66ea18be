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

#include "bopest/quadrotor.h"

#include <array>
#include <cmath>
#include <string>

#include "bopest/error.h"
#include "bopest/so3.h"

namespace bopest {
namespace {

const Eigen::Vector3d kE3(0.0, 0.0, 1.0);

// largest per-step rotation of R_d treated as smooth
constexpr double kMaxStencilRotation = 0.3;

QuadrotorState Axpy(const QuadrotorState& x, double h,
                    const QuadrotorDerivative& d) {
  QuadrotorState out;
  out.position = x.position + h * d.position;
  out.velocity = x.velocity + h * d.velocity;
  out.rotation = x.rotation + h * d.rotation;
  out.rate = x.rate + h * d.rate;
  return out;
}

bool AllFinite(const QuadrotorState& x) {
  return x.position.allFinite() && x.velocity.allFinite() &&
         x.rotation.allFinite() && x.rate.allFinite();
}

Eigen::Vector3d SkewPartVee(const Eigen::Matrix3d& m) {
  const Eigen::Matrix3d s = 0.5 * (m - m.transpose());
  return {s(2, 1), s(0, 2), s(1, 0)};
}

}  // namespace

void QuadrotorParams::Validate() const {
  if (!(mass > 0.0) || !(inertia.array() > 0.0).all() ||
      !std::isfinite(gravity)) {
    throw InvalidArgument("quadrotor needs m > 0 and positive diagonal J");
  }
}

void QuadrotorGains::Validate() const {
  if (!(kr.array() > 0.0).all() || !(kv.array() > 0.0).all() ||
      !(kR.array() > 0.0).all() || !(kOmega.array() > 0.0).all()) {
    throw InvalidArgument("quadrotor gains must be positive");
  }
}

QuadrotorReference::Sample QuadrotorReference::Evaluate(double t) const {
  Sample s;
  const Eigen::Array3d phase = frequency.array() * t;
  s.position = offset + (amplitude.array() * phase.sin()).matrix();
  s.velocity =
      (amplitude.array() * frequency.array() * phase.cos()).matrix();
  s.acceleration = (-amplitude.array() * frequency.array().square() *
                    phase.sin())
                       .matrix();
  s.yaw = yaw_mode == YawMode::kHeading
              ? std::atan2(s.position.y(), s.position.x())
              : fixed_yaw;
  return s;
}

QuadrotorReference QuadrotorReference::Hover(const Eigen::Vector3d& position) {
  QuadrotorReference ref;
  ref.amplitude.setZero();
  ref.offset = position;
  ref.yaw_mode = YawMode::kFixed;
  ref.fixed_yaw = 0.0;
  return ref;
}

QuadrotorDerivative QuadrotorDynamics(const QuadrotorState& x,
                                      const QuadrotorInput& u,
                                      const QuadrotorParams& p) {
  QuadrotorDerivative d;
  d.position = x.velocity;
  d.velocity = p.gravity * kE3 - (u.thrust / p.mass) * (x.rotation * kE3);
  d.rotation = x.rotation * Hat(x.rate);
  const Eigen::Vector3d momentum = p.inertia.cwiseProduct(x.rate);
  d.rate = (u.moment - x.rate.cross(momentum)).cwiseQuotient(p.inertia);
  return d;
}

QuadrotorState StepQuadrotor(const QuadrotorState& x, const QuadrotorInput& u,
                             const QuadrotorParams& p, double dt,
                             Integrator integrator, double t) {
  if (!(dt > 0.0)) throw InvalidArgument("step needs dt > 0");
  QuadrotorState next;
  if (integrator == Integrator::kEuler) {
    next = Axpy(x, dt, QuadrotorDynamics(x, u, p));
  } else {
    const QuadrotorDerivative k1 = QuadrotorDynamics(x, u, p);
    const QuadrotorDerivative k2 =
        QuadrotorDynamics(Axpy(x, 0.5 * dt, k1), u, p);
    const QuadrotorDerivative k3 =
        QuadrotorDynamics(Axpy(x, 0.5 * dt, k2), u, p);
    const QuadrotorDerivative k4 = QuadrotorDynamics(Axpy(x, dt, k3), u, p);
    QuadrotorDerivative sum;
    sum.position = k1.position + 2 * k2.position + 2 * k3.position + k4.position;
    sum.velocity = k1.velocity + 2 * k2.velocity + 2 * k3.velocity + k4.velocity;
    sum.rotation = k1.rotation + 2 * k2.rotation + 2 * k3.rotation + k4.rotation;
    sum.rate = k1.rate + 2 * k2.rate + 2 * k3.rate + k4.rate;
    next = Axpy(x, dt / 6.0, sum);
  }
  if (!AllFinite(next)) {
    throw SimulationDiverged(t, "quadrotor state non-finite at t=" +
                                    std::to_string(t));
  }
  next.rotation = Orthonormalize(next.rotation);
  return next;
}

Eigen::Vector3d AttitudeError(const Eigen::Matrix3d& r,
                              const Eigen::Matrix3d& desired) {
  const Eigen::Matrix3d m =
      0.5 * (desired.transpose() * r - r.transpose() * desired);
  return {m(2, 1), m(0, 2), m(1, 0)};
}

GeometricController::GeometricController(QuadrotorGains gains,
                                         QuadrotorReference reference,
                                         double difference_step)
    : gains_(std::move(gains)),
      reference_(std::move(reference)),
      step_(difference_step) {
  gains_.Validate();
  if (!(step_ > 0.0)) {
    throw InvalidArgument("finite-difference step must be positive");
  }
}

std::optional<Eigen::Matrix3d> GeometricController::DesiredRotation(
    double t, const Eigen::Vector3d& feedback, double mass,
    double gravity) const {
  const QuadrotorReference::Sample ref = reference_.Evaluate(t);
  const Eigen::Vector3d force =
      feedback + mass * gravity * kE3 - mass * ref.acceleration;
  const double norm = force.norm();
  if (!(norm >= 1e-9)) return std::nullopt;
  const Eigen::Vector3d b3 = force / norm;
  const Eigen::Vector3d heading(std::cos(ref.yaw), std::sin(ref.yaw), 0.0);
  Eigen::Vector3d b2 = b3.cross(heading);
  const double b2_norm = b2.norm();
  if (!(b2_norm >= 1e-9)) return std::nullopt;
  b2 /= b2_norm;
  Eigen::Matrix3d rd;
  rd.col(0) = b2.cross(b3);
  rd.col(1) = b2;
  rd.col(2) = b3;
  return rd;
}

GeometricController::Output GeometricController::Compute(
    const QuadrotorState& x, double t, const QuadrotorParams& estimate) {
  Output out;
  const QuadrotorReference::Sample ref = reference_.Evaluate(t);
  out.position_error = x.position - ref.position;
  out.velocity_error = x.velocity - ref.velocity;
  const Eigen::Vector3d feedback =
      gains_.kr.cwiseProduct(out.position_error) +
      gains_.kv.cwiseProduct(out.velocity_error);
  const double m = estimate.mass;
  const double g = estimate.gravity;
  const Eigen::Vector3d force = feedback + m * g * kE3 - m * ref.acceleration;
  out.input.thrust = force.dot(x.rotation * kE3);

  std::optional<Eigen::Matrix3d> rd = DesiredRotation(t, feedback, m, g);
  if (!rd) {
    out.held_attitude = true;
    rd = last_desired_.value_or(Eigen::Matrix3d::Identity());
  }
  last_desired_ = rd;
  out.desired_rotation = *rd;

  // R_d on the stencil t-2h .. t+2h with the feedback term held
  std::array<Eigen::Matrix3d, 5> stencil;
  bool smooth = !out.held_attitude;
  for (int k = -2; k <= 2 && smooth; ++k) {
    if (k == 0) {
      stencil[2] = *rd;
      continue;
    }
    const auto r = DesiredRotation(t + k * step_, feedback, m, g);
    if (!r) {
      smooth = false;
      break;
    }
    stencil[k + 2] = *r;
  }
  for (int k = 0; k < 4 && smooth; ++k) {
    if (RotationAngle(stencil[k], stencil[k + 1]) > kMaxStencilRotation) {
      smooth = false;
    }
  }

  Eigen::Vector3d omega_d = Eigen::Vector3d::Zero();
  Eigen::Vector3d omega_d_dot = Eigen::Vector3d::Zero();
  if (smooth) {
    const double h2 = 2.0 * step_;
    auto rate_at = [&](int i) {
      return SkewPartVee(stencil[i].transpose() *
                         (stencil[i + 1] - stencil[i - 1]) / h2);
    };
    omega_d = rate_at(2);
    omega_d_dot = (rate_at(3) - rate_at(1)) / h2;
  } else {
    out.dropped_feedforward = true;
  }

  const Eigen::Matrix3d& r = x.rotation;
  const Eigen::Matrix3d rt_rd = r.transpose() * *rd;
  out.attitude_error = AttitudeError(r, *rd);
  out.rate_error = x.rate - rt_rd * omega_d;

  const Eigen::Vector3d& j = estimate.inertia;
  const Eigen::Vector3d momentum = j.cwiseProduct(x.rate);
  out.input.moment =
      -gains_.kR.cwiseProduct(out.attitude_error) -
      gains_.kOmega.cwiseProduct(out.rate_error) + x.rate.cross(momentum) -
      j.cwiseProduct(Hat(x.rate) * rt_rd * omega_d - rt_rd * omega_d_dot);
  return out;
}

}  // namespace bopest
