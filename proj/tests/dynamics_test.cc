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


#include <cmath>
#include <limits>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "bopest/error.h"
#include "bopest/estimator.h"
#include "bopest/integrator.h"
#include "bopest/pendulum.h"
#include "bopest/quadrotor.h"
#include "bopest/schedule.h"
#include "bopest/so3.h"
#include "test_support.h"

namespace bopest {
namespace {

constexpr double kSixty = M_PI / 3.0;

TEST(PendulumTest, DerivativeExamples) {
  const PendulumParams unit{1.0, 1.0, 0.0, 9.81};
  PendulumState d = PendulumDerivative({0.0, 0.0}, 0.0, unit);
  EXPECT_EQ(d.angle, 0.0);
  EXPECT_EQ(d.rate, 0.0);
  d = PendulumDerivative({M_PI / 2, 0.0}, 0.0, unit);
  EXPECT_EQ(d.angle, 0.0);
  EXPECT_NEAR(d.rate, -9.81, 1e-15);

  const PendulumParams p{1.75, 0.75, 0.1, 9.81};
  d = PendulumDerivative({0.3, 0.2}, 0.5, p);
  const double hand = -(9.81 / 0.75) * std::sin(0.3) - (0.1 / 1.75) * 0.2 +
                      0.5 / (1.75 * 0.75);
  EXPECT_EQ(d.angle, 0.2);
  EXPECT_NEAR(d.rate, hand, 1e-14);
}

TEST(PendulumTest, EulerStepMatchesArithmetic) {
  const PendulumParams p{1.75, 0.75, 0.1, 9.81};
  const PendulumState x{0.3, 0.2};
  const PendulumState next = StepPendulum(x, 0.5, p, 0.01, Integrator::kEuler);
  const double acc = -(9.81 / 0.75) * std::sin(0.3) - (0.1 / 1.75) * 0.2 +
                     0.5 / (1.75 * 0.75);
  EXPECT_NEAR(next.angle, 0.3 + 0.01 * 0.2, 1e-15);
  EXPECT_NEAR(next.rate, 0.2 + 0.01 * acc, 1e-15);
}

TEST(PendulumTest, EquilibriumIsFixed) {
  const PendulumParams p;
  for (Integrator i : {Integrator::kEuler, Integrator::kRk4}) {
    const PendulumState next = StepPendulum({0.0, 0.0}, 0.0, p, 0.01, i);
    EXPECT_EQ(next.angle, 0.0);
    EXPECT_EQ(next.rate, 0.0);
  }
}

TEST(PendulumTest, NonFiniteStepThrowsWithTime) {
  try {
    StepPendulum({0.0, 0.0}, std::numeric_limits<double>::infinity(),
                 PendulumParams{}, 0.01, Integrator::kEuler, 2.5);
    FAIL() << "expected divergence";
  } catch (const SimulationDiverged& e) {
    EXPECT_EQ(e.time(), 2.5);
    EXPECT_EQ(e.kind(), ErrorKind::kSimulationDiverged);
  }
}

PendulumState Simulate(PendulumState x, double torque, const PendulumParams& p,
                       double dt, int steps, Integrator integrator) {
  for (int i = 0; i < steps; ++i) x = StepPendulum(x, torque, p, dt, integrator);
  return x;
}

TEST(PendulumTest, Rk4AgreesWithRefinedEuler) {
  const PendulumParams p{1.75, 0.75, 0.1, 9.81};
  const PendulumState x0{0.3, 0.2};
  const PendulumState rk = Simulate(x0, 0.5, p, 1e-4, 10000, Integrator::kRk4);
  const PendulumState eu = Simulate(x0, 0.5, p, 1e-6, 1000000, Integrator::kEuler);
  EXPECT_LT(std::abs(rk.angle - eu.angle), 1e-5);
  EXPECT_LT(std::abs(rk.rate - eu.rate), 1e-5);
}

double Rk4Error(double dt) {
  const PendulumParams p{1.75, 0.75, 0.1, 9.81};
  const PendulumState x0{1.0, 0.0};
  const PendulumState ref = Simulate(x0, 0.0, p, 1.0 / 6400, 6400, Integrator::kRk4);
  const PendulumState x =
      Simulate(x0, 0.0, p, dt, static_cast<int>(std::lround(1.0 / dt)),
               Integrator::kRk4);
  return std::hypot(x.angle - ref.angle, x.rate - ref.rate);
}

TEST(PendulumTest, Rk4IsFourthOrder) {
  const double ratio = Rk4Error(0.05) / Rk4Error(0.025);
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(PendulumTest, UnforcedEnergyDissipates) {
  const PendulumParams p{1.75, 0.75, 0.1, 9.81};
  PendulumState x{2.5, 0.0};
  double e = PendulumEnergy(x, p);
  for (int i = 0; i < 10000; ++i) {
    x = StepPendulum(x, 0.0, p, 1e-3, Integrator::kRk4);
    const double next = PendulumEnergy(x, p);
    ASSERT_LE(next, e + 1e-12) << "step " << i;
    e = next;
  }
  EXPECT_LT(e, PendulumEnergy({2.5, 0.0}, p));
}

TEST(PendulumTest, ControlAtReferenceIsGravityCompensation) {
  const PendulumParams p{1.75, 0.75, 0.1, 9.81};
  const double u = PendulumControl({kSixty, 0.0}, {kSixty, 0.0}, 0.0,
                                   PendulumGains{}, p);
  EXPECT_NEAR(u, 1.75 * 0.75 * (9.81 / 0.75) * std::sin(kSixty), 1e-12);
}

double ClosedLoop(const PendulumParams& truth, const PendulumParams& estimate,
                  double settle_by, double until, double* max_after) {
  PendulumState x{0.0, 0.0};
  const PendulumReference ref{kSixty, 0.0};
  const double dt = 0.005;
  *max_after = 0.0;
  for (int k = 0; k * dt < until; ++k) {
    const double u = PendulumControl(x, ref, k * dt, PendulumGains{}, estimate);
    x = StepPendulum(x, u, truth, dt, Integrator::kEuler);
    if ((k + 1) * dt >= settle_by) {
      *max_after = std::max(*max_after, std::abs(x.angle - kSixty));
    }
  }
  return std::abs(x.angle - kSixty);
}

TEST(PendulumTest, ExactParametersSettleWithinTwoSeconds) {
  const PendulumParams p{1.75, 0.75, 0.1, 9.81};
  double max_after = 0.0;
  ClosedLoop(p, p, 2.0, 10.0, &max_after);
  EXPECT_LT(max_after, 0.01);
}

TEST(PendulumTest, NominalParametersLeaveSteadyError) {
  const PendulumParams truth{4.271, 0.981, 0.1, 9.81};
  const PendulumParams nominal{1.75, 0.75, 0.1, 9.81};
  double max_after = 0.0;
  EXPECT_GT(ClosedLoop(truth, nominal, 2.0, 10.0, &max_after), 0.05);
}

TEST(PendulumTest, ValidateRejectsBadParameters) {
  EXPECT_THROW((PendulumParams{0.0, 1.0, 0.1, 9.81}.Validate()), InvalidArgument);
  EXPECT_THROW((PendulumParams{1.0, -1.0, 0.1, 9.81}.Validate()), InvalidArgument);
  EXPECT_THROW((PendulumParams{1.0, 1.0, -0.1, 9.81}.Validate()), InvalidArgument);
  EXPECT_THROW((PendulumGains{0.0, 1.0}.Validate()), InvalidArgument);
}

TEST(So3Test, HatVeeExamples) {
  EXPECT_EQ(Hat(Eigen::Vector3d::Zero()), Eigen::Matrix3d::Zero());
  EXPECT_EQ(Vee(Hat(Eigen::Vector3d(1, 2, 3))), Eigen::Vector3d(1, 2, 3));
  EXPECT_EQ(Hat(Eigen::Vector3d(1, 0, 0)) * Eigen::Vector3d(0, 1, 0),
            Eigen::Vector3d(0, 0, 1));
  EXPECT_THROW(Vee(Eigen::Matrix3d::Identity()), InvalidArgument);
}

TEST(So3Test, HatIsCrossProductOnRandomVectors) {
  testing::Gen gen(13);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d a = gen.Vector(3, -5, 5);
    const Eigen::Vector3d b = gen.Vector(3, -5, 5);
    EXPECT_LT((Hat(a) * b - a.cross(b)).norm(), 1e-12);
    EXPECT_LT((Vee(Hat(a)) - a).norm(), 1e-15);
  }
}

TEST(So3Test, OrthonormalizeRestoresRotation) {
  testing::Gen gen(14);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix3d r =
        Eigen::AngleAxisd(gen.Uniform(0, M_PI),
                          Eigen::Vector3d(gen.Vector(3, -1, 1)).normalized())
            .toRotationMatrix();
    const Eigen::Matrix3d noisy =
        r + 1e-3 * Eigen::Matrix3d(Eigen::Matrix3d::Random());
    const Eigen::Matrix3d fixed = Orthonormalize(noisy);
    EXPECT_LT(OrthonormalityError(fixed), 1e-12);
    EXPECT_NEAR(fixed.determinant(), 1.0, 1e-12);
    EXPECT_LT((fixed - r).norm(), 1e-2);
  }
}

TEST(So3Test, RotationAngleOfKnownRotation) {
  const Eigen::Matrix3d r =
      Eigen::AngleAxisd(0.7, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  EXPECT_NEAR(RotationAngle(Eigen::Matrix3d::Identity(), r), 0.7, 1e-12);
}

TEST(QuadrotorTest, HoverBalance) {
  const QuadrotorParams p;
  QuadrotorState x;
  const QuadrotorDerivative d = QuadrotorDynamics(x, {p.mass * p.gravity, {0, 0, 0}}, p);
  EXPECT_LT(d.velocity.norm(), 1e-15);
  EXPECT_EQ(d.rate, Eigen::Vector3d::Zero());
  EXPECT_EQ(d.position, Eigen::Vector3d::Zero());
}

TEST(QuadrotorTest, FreeFallPointsDown) {
  const QuadrotorParams p;
  const QuadrotorDerivative d = QuadrotorDynamics(QuadrotorState{}, {}, p);
  EXPECT_EQ(d.velocity, Eigen::Vector3d(0, 0, 9.81));
}

TEST(QuadrotorTest, PrincipalAxisSpinIsSteady) {
  const QuadrotorParams p;
  QuadrotorState x;
  x.rate = {1.0, 0.0, 0.0};
  const Eigen::Vector3d jw = p.inertia.cwiseProduct(x.rate);
  const Eigen::Vector3d oracle = -x.rate.cross(jw).cwiseQuotient(p.inertia);
  const QuadrotorDerivative d = QuadrotorDynamics(x, {}, p);
  EXPECT_LT((d.rate - oracle).norm(), 1e-15);
  EXPECT_LT(d.rate.norm(), 1e-15);
}

TEST(QuadrotorTest, ZeroDerivativeLeavesStateUnchanged) {
  const QuadrotorParams p;
  QuadrotorState x;
  x.position = {1, 2, 3};
  const QuadrotorState next =
      StepQuadrotor(x, {p.mass * p.gravity, {0, 0, 0}}, p, 0.01, Integrator::kRk4);
  EXPECT_LT((next.position - x.position).norm(), 1e-15);
  EXPECT_LT(OrthonormalityError(next.rotation), 1e-15);
}

TEST(QuadrotorTest, HoverControllerGivesWeight) {
  const QuadrotorParams p;
  GeometricController c(QuadrotorGains{},
                        QuadrotorReference::Hover(Eigen::Vector3d::Zero()), 0.005);
  const GeometricController::Output out = c.Compute(QuadrotorState{}, 0.0, p);
  EXPECT_NEAR(out.input.thrust, p.mass * p.gravity, 1e-9);
  EXPECT_LT(out.input.moment.norm(), 1e-9);
  EXPECT_EQ(AttitudeError(Eigen::Matrix3d::Identity(), Eigen::Matrix3d::Identity()),
            Eigen::Vector3d::Zero());
}

TEST(QuadrotorTest, HoverFixedPointDrift) {
  const QuadrotorParams p;
  const Eigen::Vector3d where(1.0, -2.0, 0.5);
  GeometricController c(QuadrotorGains{}, QuadrotorReference::Hover(where), 0.005);
  QuadrotorState x;
  x.position = where;
  for (int k = 0; k < 200; ++k) {
    const auto out = c.Compute(x, k * 0.005, p);
    x = StepQuadrotor(x, out.input, p, 0.005, Integrator::kEuler, k * 0.005);
  }
  EXPECT_LT((x.position - where).norm(), 1e-6);
}

TEST(QuadrotorTest, DegenerateForceHoldsAttitude) {
  const QuadrotorParams p;
  GeometricController c(QuadrotorGains{},
                        QuadrotorReference::Hover(Eigen::Vector3d::Zero()), 0.005);
  QuadrotorState x;
  x.position = {0.0, 0.0, -p.mass * p.gravity / 5.0};
  const auto out = c.Compute(x, 0.0, p);
  EXPECT_TRUE(out.held_attitude);
  EXPECT_TRUE(out.input.moment.allFinite());
  EXPECT_EQ(out.desired_rotation, Eigen::Matrix3d::Identity());
}

TEST(QuadrotorTest, TumblingRotationStaysOrthonormal) {
  const QuadrotorParams p;
  QuadrotorState x;
  x.rate = {3.0, -2.0, 5.0};
  for (Integrator integ : {Integrator::kEuler, Integrator::kRk4}) {
    QuadrotorState y = x;
    for (int k = 0; k < 2000; ++k) {
      y = StepQuadrotor(y, {0.0, {0.3, -0.1, 0.2}}, p, 0.005, integ);
      ASSERT_LT(OrthonormalityError(y.rotation), 1e-6);
      ASSERT_NEAR(y.rotation.determinant(), 1.0, 1e-6);
    }
  }
}

TEST(QuadrotorTest, ReferenceDerivativesAreConsistent) {
  const QuadrotorReference ref;
  for (double t : {0.3, 2.0, 7.1, 13.4}) {
    const double h = 1e-5;
    const auto s = ref.Evaluate(t);
    const auto a = ref.Evaluate(t - h);
    const auto b = ref.Evaluate(t + h);
    EXPECT_LT((s.velocity - (b.position - a.position) / (2 * h)).norm(), 1e-6);
    EXPECT_LT((s.acceleration - (b.velocity - a.velocity) / (2 * h)).norm(), 1e-6);
    EXPECT_NEAR(s.yaw, std::atan2(s.position.y(), s.position.x()), 1e-12);
  }
}

std::vector<double> AxisMse(bool exact) {
  QuadrotorPlant plant(QuadrotorSchedule{}, QuadrotorGains{}, QuadrotorReference{},
                       Integrator::kEuler, 0.005);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  const int steps = 3200;
  for (int k = 0; k <= steps; ++k) {
    const double t = k * 0.005;
    if (exact) plant.Reconfigure(plant.TrueParams(t));
    const Eigen::VectorXd u = plant.ComputeControl(t);
    sum += (plant.AxisValues() - plant.AxisReference(t)).cwiseAbs2();
    EXPECT_LT(OrthonormalityError(plant.state().rotation), 1e-6);
    if (k < steps) plant.Advance(t, u, 0.005);
  }
  sum /= steps + 1;
  return {sum[0], sum[1], sum[2]};
}

TEST(QuadrotorTest, ExactParametersTrackBetterThanNominal) {
  const std::vector<double> exact = AxisMse(true);
  const std::vector<double> nominal = AxisMse(false);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(std::isfinite(exact[i]));
    EXPECT_LT(exact[i], nominal[i]) << "axis " << i;
  }
}

TEST(QuadrotorTest, ValidateRejectsBadValues) {
  QuadrotorParams p;
  p.inertia[1] = 0.0;
  EXPECT_THROW(p.Validate(), InvalidArgument);
  QuadrotorGains g;
  g.kOmega[2] = -1.0;
  EXPECT_THROW(g.Validate(), InvalidArgument);
}

TEST(ScheduleTest, KnownValues) {
  const QuadrotorSchedule s;
  EXPECT_EQ(s.Mass(0.0), 1.25);
  EXPECT_EQ(s.Mass(5.0), 1.85);
  EXPECT_EQ(s.Mass(10.5), 2.10);
  EXPECT_EQ(s.Mass(14.0), 1.25);
  EXPECT_NEAR(s.TrueParams(5.0).inertia[0], 3.0 * (1.1 + 1.85 * 0.04), 1e-12);
  EXPECT_NEAR(s.TrueParams(5.0).inertia[2], 3.0 * (2.2 + 1.85 * 0.04), 1e-12);
  const double m15 = 0.2 * std::exp(-0.3) * std::sin(2.25) + 1.25;
  EXPECT_NEAR(s.Mass(1.5), m15, 1e-15);
}

TEST(ScheduleTest, FiniteAndPiecewiseConstant) {
  const QuadrotorSchedule s;
  for (int k = 0; k <= 16000; ++k) {
    const double t = k * 1e-3;
    EXPECT_TRUE(std::isfinite(s.Mass(t)));
    if (t > 3.0 && t <= 6.0) {
      EXPECT_EQ(s.Mass(t), 1.85);
    }
    if (t > 9.0 && t <= 12.0) {
      EXPECT_EQ(s.Mass(t), 2.10);
    }
  }
}

TEST(ScheduleTest, PendulumJump) {
  const PendulumSchedule s;
  EXPECT_EQ(s.TrueParams(2.999).mass, 1.75);
  EXPECT_EQ(s.TrueParams(3.0).mass, 4.271);
  EXPECT_EQ(s.TrueParams(3.0).length, 0.981);
}

}  // namespace
}  // namespace bopest
