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

#ifndef BOPEST_ESTIMATOR_H_
#define BOPEST_ESTIMATOR_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bopest/baselines.h"
#include "bopest/bayes_opt.h"
#include "bopest/domain.h"
#include "bopest/pendulum.h"
#include "bopest/quadrotor.h"
#include "bopest/random.h"
#include "bopest/schedule.h"

namespace bopest {

// |phi_ref - phi|
double TrackingError(const PendulumState& x, const PendulumReference& ref,
                     double t);
// |r_d(t) - r|
double TrackingError(const QuadrotorState& x, const QuadrotorReference& ref,
                     double t);

// Residual cost between an observed derivative and the parametric model at a
// fixed (x, u):  |w .* (y* - f(theta))| + N(0, sigma^2), floored at 0.
class ResidualObjective {
 public:
  using Model = std::function<Eigen::VectorXd(const ParameterVector&)>;

  // `noise` may be null when noise_std == 0. Empty weights mean all ones.
  ResidualObjective(Eigen::VectorXd observed, Model model, double noise_std,
                    Rng* noise, Eigen::VectorXd weights = {});

  double Evaluate(const ParameterVector& theta);
  // Throws InvalidParameter if the model output is non-finite.
  double EvaluateNoiseFree(const ParameterVector& theta) const;

  const Eigen::VectorXd& observed() const { return observed_; }
  int evaluations() const { return evaluations_; }

 private:
  Eigen::VectorXd observed_;
  Model model_;
  double noise_std_;
  Rng* noise_;
  Eigen::VectorXd weights_;
  int evaluations_ = 0;
};

// What the online estimator needs from a closed-loop plant. Control inputs
// and derivative channels are flattened into vectors.
class EstimationPlant {
 public:
  virtual ~EstimationPlant() = default;

  virtual std::string_view name() const = 0;
  virtual int param_dim() const = 0;

  virtual double TrackingError(double t) const = 0;

  // Parameters the control law currently uses.
  virtual const ParameterVector& active_params() const = 0;
  virtual void Reconfigure(const ParameterVector& theta) = 0;

  virtual Eigen::VectorXd ComputeControl(double t) = 0;
  // Derivative channels used for estimation, under the true parameters.
  virtual Eigen::VectorXd TrueChannels(double t,
                                       const Eigen::VectorXd& u) const = 0;
  // Same channels predicted by the model with candidate parameters.
  virtual Eigen::VectorXd ModelChannels(const Eigen::VectorXd& u,
                                        const ParameterVector& theta) const = 0;
  virtual void Advance(double t, const Eigen::VectorXd& u, double dt) = 0;
  virtual ParameterVector TrueParams(double t) const = 0;
  virtual ParameterVector NominalParams() const = 0;

  // Logging surface.
  virtual std::vector<std::string> StateNames() const = 0;
  virtual Eigen::VectorXd StateVector() const = 0;
  virtual std::vector<std::string> AxisNames() const = 0;
  virtual Eigen::VectorXd AxisValues() const = 0;
  virtual Eigen::VectorXd AxisReference(double t) const = 0;
  virtual std::vector<std::string> ControlNames() const = 0;
  virtual std::vector<std::string> ParamNames() const = 0;
};

class PendulumPlant : public EstimationPlant {
 public:
  PendulumPlant(PendulumSchedule schedule, PendulumGains gains,
                PendulumReference reference, PendulumState initial,
                Integrator integrator);

  std::string_view name() const override { return "pendulum"; }
  int param_dim() const override { return 2; }
  double TrackingError(double t) const override;
  const ParameterVector& active_params() const override { return active_; }
  void Reconfigure(const ParameterVector& theta) override;
  Eigen::VectorXd ComputeControl(double t) override;
  Eigen::VectorXd TrueChannels(double t,
                               const Eigen::VectorXd& u) const override;
  Eigen::VectorXd ModelChannels(const Eigen::VectorXd& u,
                                const ParameterVector& theta) const override;
  void Advance(double t, const Eigen::VectorXd& u, double dt) override;
  ParameterVector TrueParams(double t) const override;
  ParameterVector NominalParams() const override;
  std::vector<std::string> StateNames() const override;
  Eigen::VectorXd StateVector() const override;
  std::vector<std::string> AxisNames() const override;
  Eigen::VectorXd AxisValues() const override;
  Eigen::VectorXd AxisReference(double t) const override;
  std::vector<std::string> ControlNames() const override;
  std::vector<std::string> ParamNames() const override;

  const PendulumState& state() const { return state_; }
  // theta = (mass, length); friction and gravity come from the schedule
  PendulumParams ParamsFrom(const ParameterVector& theta) const;

 private:
  PendulumSchedule schedule_;
  PendulumGains gains_;
  PendulumReference reference_;
  PendulumState state_;
  Integrator integrator_;
  ParameterVector active_;
};

class QuadrotorPlant : public EstimationPlant {
 public:
  QuadrotorPlant(QuadrotorSchedule schedule, QuadrotorGains gains,
                 QuadrotorReference reference, Integrator integrator,
                 double dt);

  std::string_view name() const override { return "quadrotor"; }
  int param_dim() const override { return 4; }
  double TrackingError(double t) const override;
  const ParameterVector& active_params() const override { return active_; }
  void Reconfigure(const ParameterVector& theta) override;
  Eigen::VectorXd ComputeControl(double t) override;
  Eigen::VectorXd TrueChannels(double t,
                               const Eigen::VectorXd& u) const override;
  Eigen::VectorXd ModelChannels(const Eigen::VectorXd& u,
                                const ParameterVector& theta) const override;
  void Advance(double t, const Eigen::VectorXd& u, double dt) override;
  ParameterVector TrueParams(double t) const override;
  ParameterVector NominalParams() const override;
  std::vector<std::string> StateNames() const override;
  Eigen::VectorXd StateVector() const override;
  std::vector<std::string> AxisNames() const override;
  Eigen::VectorXd AxisValues() const override;
  Eigen::VectorXd AxisReference(double t) const override;
  std::vector<std::string> ControlNames() const override;
  std::vector<std::string> ParamNames() const override;

  const QuadrotorState& state() const { return state_; }
  // theta = (mass, Jx, Jy, Jz)
  QuadrotorParams ParamsFrom(const ParameterVector& theta) const;
  static ParameterVector ThetaFrom(const QuadrotorParams& p);
  int attitude_holds() const { return attitude_holds_; }

 private:
  QuadrotorSchedule schedule_;
  GeometricController controller_;
  QuadrotorReference reference_;
  QuadrotorState state_;
  Integrator integrator_;
  ParameterVector active_;
  int attitude_holds_ = 0;
};

enum class EstimationMethod { kNone, kBo, kLocalGradient, kSimplex };

std::string_view EstimationMethodName(EstimationMethod method);
std::optional<EstimationMethod> ParseEstimationMethod(std::string_view name);

struct EstimatorConfig {
  Domain domain = Domain::UnitCube(1);
  double error_threshold = 0.01;  // tau_e
  int budget = 30;                // N, EI-driven evaluations per episode
  int initial_samples = 5;
  std::uint64_t seed = 0;
  double refractory = 0.5;        // s without re-trigger after an episode
  double measurement_noise_std = 0.0;  // per channel sigma_x
  double residual_noise_std = 0.0;     // sigma_omega
  Eigen::VectorXd channel_weights;     // empty: unweighted
  AcquisitionConfig acquisition;
  std::optional<BoOptions> bo;         // default: DefaultBoOptions(d)

  void Validate() const;
};

enum class RecordKind { kSeed, kExpectedImprovement, kFallback, kBaseline };

std::string_view RecordKindName(RecordKind kind);

struct EstimationRecord {
  int episode = 0;
  int iteration = 0;
  RecordKind kind = RecordKind::kSeed;
  double time = 0.0;
  ParameterVector queried;
  double residual = 0.0;
  double incumbent = 0.0;
  ParameterVector active;
  double acquisition_seconds = 0.0;
};

struct EpisodeSummary {
  int index = 0;
  EstimationMethod method = EstimationMethod::kBo;
  double trigger_time = 0.0;
  double end_time = 0.0;
  double trigger_error = 0.0;
  ParameterVector estimate;
  double estimate_residual = 0.0;
  ParameterVector true_params;  // at end_time
  int evaluations = 0;
  int proposals = 0;
  // mean wall time per proposal (GP refit + acquisition), or per baseline
  // solve
  double mean_prediction_seconds = 0.0;
  bool failed = false;
  std::string failure;
};

struct EstimationTrace {
  std::vector<EstimationRecord> records;
  std::vector<EpisodeSummary> episodes;
};

struct TrajectorySample {
  double time = 0.0;
  Eigen::VectorXd state;
  Eigen::VectorXd axes;
  Eigen::VectorXd reference;
  Eigen::VectorXd control;
  ParameterVector active;
  double tracking_error = 0.0;
  int episode = -1;  // index of the running episode, -1 outside episodes
};

// Independent deterministic noise streams derived from one seed.
struct NoiseStreams {
  explicit NoiseStreams(std::uint64_t seed);

  Rng measurement;  // sigma_x on observed derivatives
  Rng residual;     // sigma_omega on residual costs
  Rng sampling;     // initial random parameter draws
};

// Called once per simulated step with the control actually applied.
using StepObserver = std::function<void(double t, const Eigen::VectorXd& u,
                                        int episode)>;

struct EpisodeResult {
  EpisodeSummary summary;
  std::vector<EstimationRecord> records;
  int steps = 0;  // plant steps consumed
};

// One estimation episode: seeds the dataset with random parameter draws at
// the current (x, u), then for each of the N proposals reconfigures the
// controller, steps the plant and records the residual. Ends by committing
// the incumbent. Stops early after `max_steps` plant steps. On divergence the
// best-so-far estimate is committed, the failure recorded, and the
// SimulationDiverged exception rethrown after `on_failure` receives the
// partial result.
// Simulation time is t0 + (start_step + s) dt after s consumed steps.
EpisodeResult RunEpisode(EstimationPlant& plant, const EstimatorConfig& cfg,
                         int episode_index, double t0, long start_step,
                         double dt, int max_steps, NoiseStreams& streams,
                         const StepObserver& on_step,
                         const std::function<void(const EpisodeResult&)>&
                             on_failure = {});

// Baseline episode: a local solve on the residual frozen at the trigger
// instant. Consumes no plant steps.
EpisodeResult RunBaselineEpisode(EstimationPlant& plant,
                                 const EstimatorConfig& cfg,
                                 const BaselineConfig& baseline,
                                 EstimationMethod method, int episode_index,
                                 double t, NoiseStreams& streams);

struct SupervisorConfig {
  EstimationMethod method = EstimationMethod::kBo;
  EstimatorConfig estimator;
  BaselineConfig baseline;  // start is taken from the plant if empty
  double t0 = 0.0;
  double tf = 10.0;
  double dt = 0.005;
};

struct SupervisionResult {
  EstimationTrace trace;
  std::vector<TrajectorySample> trajectory;
  bool diverged = false;
  double divergence_time = 0.0;
  std::string failure;

  std::optional<double> first_trigger_time() const;
};

// Runs the closed loop over [t0, tf]: nominal control, error monitoring and
// an episode whenever the tracking error reaches tau_e outside the
// refractory window. `result` is filled incrementally; SimulationDiverged is
// propagated after the partial result is recorded.
void Supervise(EstimationPlant& plant, const SupervisorConfig& cfg,
               SupervisionResult* result);

SupervisionResult Supervise(EstimationPlant& plant,
                            const SupervisorConfig& cfg);

}  // namespace bopest

#endif  // BOPEST_ESTIMATOR_H_
