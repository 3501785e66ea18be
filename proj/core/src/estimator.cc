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

#include "bopest/estimator.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "bopest/error.h"

namespace bopest {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Eigen::VectorXd AddNoise(Eigen::VectorXd y, double sigma, Rng& rng) {
  if (sigma > 0.0) {
    for (int i = 0; i < y.size(); ++i) {
      y[i] += std::normal_distribution<double>(0.0, sigma)(rng);
    }
  }
  return y;
}

ParameterVector DrawUniform(const Domain& domain, Rng& rng) {
  Eigen::VectorXd u(domain.dim());
  for (int i = 0; i < u.size(); ++i) u[i] = Uniform01(rng);
  return domain.FromUnit(u);
}

}  // namespace

double TrackingError(const PendulumState& x, const PendulumReference& ref,
                     double /*t*/) {
  return std::abs(ref.angle - x.angle);
}

double TrackingError(const QuadrotorState& x, const QuadrotorReference& ref,
                     double t) {
  return (ref.Evaluate(t).position - x.position).norm();
}

ResidualObjective::ResidualObjective(Eigen::VectorXd observed, Model model,
                                     double noise_std, Rng* noise,
                                     Eigen::VectorXd weights)
    : observed_(std::move(observed)),
      model_(std::move(model)),
      noise_std_(noise_std),
      noise_(noise),
      weights_(std::move(weights)) {
  if (weights_.size() == 0) weights_ = Eigen::VectorXd::Ones(observed_.size());
  if (weights_.size() != observed_.size()) {
    throw InvalidArgument("residual weights do not match channel count");
  }
  if (noise_std_ < 0.0 || (noise_std_ > 0.0 && noise_ == nullptr)) {
    throw InvalidArgument("residual noise needs sigma >= 0 and a stream");
  }
}

double ResidualObjective::EvaluateNoiseFree(
    const ParameterVector& theta) const {
  const Eigen::VectorXd predicted = model_(theta);
  if (predicted.size() != observed_.size() || !predicted.allFinite()) {
    throw InvalidParameter(
        std::vector<double>(theta.data(), theta.data() + theta.size()),
        "model evaluation is not finite");
  }
  return weights_.cwiseProduct(observed_ - predicted).norm();
}

double ResidualObjective::Evaluate(const ParameterVector& theta) {
  double value = EvaluateNoiseFree(theta);
  ++evaluations_;
  if (noise_std_ > 0.0) {
    value += std::normal_distribution<double>(0.0, noise_std_)(*noise_);
  }
  return std::max(0.0, value);
}

// Pendulum ---------------------------------------------------------------

PendulumPlant::PendulumPlant(PendulumSchedule schedule, PendulumGains gains,
                             PendulumReference reference,
                             PendulumState initial, Integrator integrator)
    : schedule_(std::move(schedule)),
      gains_(gains),
      reference_(reference),
      state_(initial),
      integrator_(integrator),
      active_(NominalParams()) {
  schedule_.before.Validate();
  schedule_.after.Validate();
  gains_.Validate();
}

PendulumParams PendulumPlant::ParamsFrom(const ParameterVector& theta) const {
  PendulumParams p = schedule_.before;
  p.mass = theta[0];
  p.length = theta[1];
  return p;
}

double PendulumPlant::TrackingError(double t) const {
  return bopest::TrackingError(state_, reference_, t);
}

void PendulumPlant::Reconfigure(const ParameterVector& theta) {
  if (theta.size() != 2) throw InvalidArgument("pendulum theta is (m, l)");
  active_ = theta;
}

Eigen::VectorXd PendulumPlant::ComputeControl(double t) {
  Eigen::VectorXd u(1);
  u[0] = PendulumControl(state_, reference_, t, gains_, ParamsFrom(active_));
  return u;
}

Eigen::VectorXd PendulumPlant::TrueChannels(double t,
                                            const Eigen::VectorXd& u) const {
  Eigen::VectorXd y(1);
  y[0] = PendulumDerivative(state_, u[0], schedule_.TrueParams(t)).rate;
  return y;
}

Eigen::VectorXd PendulumPlant::ModelChannels(
    const Eigen::VectorXd& u, const ParameterVector& theta) const {
  Eigen::VectorXd y(1);
  y[0] = PendulumDerivative(state_, u[0], ParamsFrom(theta)).rate;
  return y;
}

void PendulumPlant::Advance(double t, const Eigen::VectorXd& u, double dt) {
  state_ = StepPendulum(state_, u[0], schedule_.TrueParams(t), dt,
                        integrator_, t);
}

ParameterVector PendulumPlant::TrueParams(double t) const {
  const PendulumParams p = schedule_.TrueParams(t);
  return Eigen::Vector2d(p.mass, p.length);
}

ParameterVector PendulumPlant::NominalParams() const {
  return Eigen::Vector2d(schedule_.before.mass, schedule_.before.length);
}

std::vector<std::string> PendulumPlant::StateNames() const {
  return {"angle", "rate"};
}

Eigen::VectorXd PendulumPlant::StateVector() const {
  return Eigen::Vector2d(state_.angle, state_.rate);
}

std::vector<std::string> PendulumPlant::AxisNames() const { return {"angle"}; }

Eigen::VectorXd PendulumPlant::AxisValues() const {
  return Eigen::VectorXd::Constant(1, state_.angle);
}

Eigen::VectorXd PendulumPlant::AxisReference(double /*t*/) const {
  return Eigen::VectorXd::Constant(1, reference_.angle);
}

std::vector<std::string> PendulumPlant::ControlNames() const {
  return {"torque"};
}

std::vector<std::string> PendulumPlant::ParamNames() const {
  return {"mass", "length"};
}

// Quadrotor --------------------------------------------------------------

QuadrotorPlant::QuadrotorPlant(QuadrotorSchedule schedule,
                               QuadrotorGains gains,
                               QuadrotorReference reference,
                               Integrator integrator, double dt)
    : schedule_(std::move(schedule)),
      controller_(std::move(gains), reference, dt),
      reference_(std::move(reference)),
      integrator_(integrator),
      active_(ThetaFrom(schedule_.nominal)) {
  schedule_.nominal.Validate();
  const QuadrotorReference::Sample start = reference_.Evaluate(0.0);
  state_.position = start.position;
  state_.velocity = start.velocity;
}

QuadrotorParams QuadrotorPlant::ParamsFrom(const ParameterVector& theta) const {
  QuadrotorParams p = schedule_.nominal;
  p.mass = theta[0];
  p.inertia = theta.segment<3>(1);
  return p;
}

ParameterVector QuadrotorPlant::ThetaFrom(const QuadrotorParams& p) {
  ParameterVector theta(4);
  theta << p.mass, p.inertia;
  return theta;
}

double QuadrotorPlant::TrackingError(double t) const {
  return bopest::TrackingError(state_, reference_, t);
}

void QuadrotorPlant::Reconfigure(const ParameterVector& theta) {
  if (theta.size() != 4) {
    throw InvalidArgument("quadrotor theta is (m, Jx, Jy, Jz)");
  }
  active_ = theta;
}

Eigen::VectorXd QuadrotorPlant::ComputeControl(double t) {
  const GeometricController::Output out =
      controller_.Compute(state_, t, ParamsFrom(active_));
  if (out.held_attitude) ++attitude_holds_;
  Eigen::VectorXd u(4);
  u << out.input.thrust, out.input.moment;
  return u;
}

namespace {

QuadrotorInput InputFrom(const Eigen::VectorXd& u) {
  return {u[0], u.segment<3>(1)};
}

Eigen::VectorXd Channels(const QuadrotorDerivative& d) {
  Eigen::VectorXd y(6);
  y << d.velocity, d.rate;
  return y;
}

}  // namespace

Eigen::VectorXd QuadrotorPlant::TrueChannels(double t,
                                             const Eigen::VectorXd& u) const {
  return Channels(
      QuadrotorDynamics(state_, InputFrom(u), schedule_.TrueParams(t)));
}

Eigen::VectorXd QuadrotorPlant::ModelChannels(
    const Eigen::VectorXd& u, const ParameterVector& theta) const {
  return Channels(QuadrotorDynamics(state_, InputFrom(u), ParamsFrom(theta)));
}

void QuadrotorPlant::Advance(double t, const Eigen::VectorXd& u, double dt) {
  state_ = StepQuadrotor(state_, InputFrom(u), schedule_.TrueParams(t), dt,
                         integrator_, t);
}

ParameterVector QuadrotorPlant::TrueParams(double t) const {
  return ThetaFrom(schedule_.TrueParams(t));
}

ParameterVector QuadrotorPlant::NominalParams() const {
  return ThetaFrom(schedule_.nominal);
}

std::vector<std::string> QuadrotorPlant::StateNames() const {
  return {"x",   "y",   "z",   "vx",  "vy",  "vz",  "r00", "r01",
          "r02", "r10", "r11", "r12", "r20", "r21", "r22", "wx",
          "wy",  "wz"};
}

Eigen::VectorXd QuadrotorPlant::StateVector() const {
  Eigen::VectorXd s(18);
  s.segment<3>(0) = state_.position;
  s.segment<3>(3) = state_.velocity;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s[6 + 3 * i + j] = state_.rotation(i, j);
  }
  s.segment<3>(15) = state_.rate;
  return s;
}

std::vector<std::string> QuadrotorPlant::AxisNames() const {
  return {"x", "y", "z"};
}

Eigen::VectorXd QuadrotorPlant::AxisValues() const { return state_.position; }

Eigen::VectorXd QuadrotorPlant::AxisReference(double t) const {
  return reference_.Evaluate(t).position;
}

std::vector<std::string> QuadrotorPlant::ControlNames() const {
  return {"thrust", "mx", "my", "mz"};
}

std::vector<std::string> QuadrotorPlant::ParamNames() const {
  return {"mass", "jx", "jy", "jz"};
}

// Estimation -------------------------------------------------------------

std::string_view EstimationMethodName(EstimationMethod method) {
  switch (method) {
    case EstimationMethod::kNone:
      return "nominal";
    case EstimationMethod::kBo:
      return "bo";
    case EstimationMethod::kLocalGradient:
      return "local-gradient";
    case EstimationMethod::kSimplex:
      return "simplex";
  }
  return "unknown";
}

std::optional<EstimationMethod> ParseEstimationMethod(std::string_view name) {
  if (name == "nominal" || name == "none") return EstimationMethod::kNone;
  if (name == "bo") return EstimationMethod::kBo;
  if (name == "local-gradient") return EstimationMethod::kLocalGradient;
  if (name == "simplex") return EstimationMethod::kSimplex;
  return std::nullopt;
}

std::string_view RecordKindName(RecordKind kind) {
  switch (kind) {
    case RecordKind::kSeed:
      return "seed";
    case RecordKind::kExpectedImprovement:
      return "ei";
    case RecordKind::kFallback:
      return "fallback";
    case RecordKind::kBaseline:
      return "baseline";
  }
  return "unknown";
}

void EstimatorConfig::Validate() const {
  if (!(error_threshold > 0.0)) {
    throw InvalidArgument("error threshold must be positive");
  }
  if (budget < 1) throw InvalidArgument("evaluation budget must be >= 1");
  if (initial_samples < 1) {
    throw InvalidArgument("at least one initial sample is required");
  }
  if (!(refractory >= 0.0)) {
    throw InvalidArgument("refractory period must be >= 0");
  }
  if (!(measurement_noise_std >= 0.0) || !(residual_noise_std >= 0.0)) {
    throw InvalidArgument("noise levels must be >= 0");
  }
  acquisition.Validate();
}

NoiseStreams::NoiseStreams(std::uint64_t seed)
    : measurement(DeriveSeed(seed, 1)),
      residual(DeriveSeed(seed, 2)),
      sampling(DeriveSeed(seed, 3)) {}

EpisodeResult RunEpisode(EstimationPlant& plant, const EstimatorConfig& cfg,
                         int episode_index, double t0, long start_step,
                         double dt, int max_steps, NoiseStreams& streams,
                         const StepObserver& on_step,
                         const std::function<void(const EpisodeResult&)>&
                             on_failure) {
  cfg.Validate();
  const Domain& domain = cfg.domain;
  if (domain.dim() != plant.param_dim()) {
    throw InvalidArgument("estimator domain does not match plant parameters");
  }
  auto time_at = [&](long s) { return t0 + (start_step + s) * dt; };

  EpisodeResult ep;
  EpisodeSummary& summary = ep.summary;
  summary.index = episode_index;
  summary.method = EstimationMethod::kBo;
  summary.trigger_time = time_at(0);
  summary.trigger_error = plant.TrackingError(summary.trigger_time);

  BoOptions bo = cfg.bo.value_or(DefaultBoOptions(domain.dim()));
  bo.fit.seed = DeriveSeed(cfg.seed, 5000 + episode_index);
  AcquisitionConfig acquisition = cfg.acquisition;
  acquisition.rng_seed = DeriveSeed(cfg.seed, 7000 + episode_index);

  // Seed the dataset at the frozen trigger-time (x, u).
  double t = time_at(0);
  Dataset seeds;
  {
    const Eigen::VectorXd u = plant.ComputeControl(t);
    const Eigen::VectorXd y = AddNoise(plant.TrueChannels(t, u),
                                       cfg.measurement_noise_std,
                                       streams.measurement);
    ResidualObjective objective(
        y, [&](const ParameterVector& th) { return plant.ModelChannels(u, th); },
        cfg.residual_noise_std, &streams.residual, cfg.channel_weights);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.initial_samples; ++i) {
      ParameterVector theta = DrawUniform(domain, streams.sampling);
      const double value = objective.Evaluate(theta);
      best = std::min(best, value);
      ep.records.push_back({episode_index, i - cfg.initial_samples,
                            RecordKind::kSeed, t, theta, value, best,
                            plant.active_params(), 0.0});
      seeds.Add(std::move(theta), value);
    }
  }

  // GP noise starts at sigma_omega^2 expressed in standardized units.
  if (cfg.residual_noise_std > 0.0 && bo.gp.standardize_targets) {
    double mean = 0.0;
    for (double v : seeds.targets) mean += v;
    mean /= seeds.size();
    double var = 0.0;
    for (double v : seeds.targets) var += (v - mean) * (v - mean);
    var /= seeds.size();
    const double scale2 = var > 1e-24 ? var : 1.0;
    bo.initial_hyperparams.noise_variance =
        std::clamp(cfg.residual_noise_std * cfg.residual_noise_std / scale2,
                   bo.fit.bounds.min_noise_variance,
                   bo.fit.bounds.max_noise_variance);
  }

  BoState state(domain, cfg.budget, std::move(seeds), bo);
  double pending_update_seconds = 0.0;
  double total_prediction_seconds = 0.0;

  auto commit_best = [&]() {
    summary.estimate = state.incumbent().best_input;
    summary.estimate_residual = state.incumbent().best_observed;
    plant.Reconfigure(summary.estimate);
  };

  for (int i = 1; i <= cfg.budget && ep.steps < max_steps; ++i) {
    const Clock::time_point propose_start = Clock::now();
    const Proposal proposal = ProposeNext(state, acquisition);
    const double seconds = SecondsSince(propose_start) + pending_update_seconds;
    total_prediction_seconds += seconds;
    ++summary.proposals;

    plant.Reconfigure(proposal.point);
    const Eigen::VectorXd u = plant.ComputeControl(t);
    const Eigen::VectorXd y = AddNoise(plant.TrueChannels(t, u),
                                       cfg.measurement_noise_std,
                                       streams.measurement);
    ResidualObjective objective(
        y, [&](const ParameterVector& th) { return plant.ModelChannels(u, th); },
        cfg.residual_noise_std, &streams.residual, cfg.channel_weights);
    const double value = objective.Evaluate(proposal.point);

    if (on_step) on_step(t, u, episode_index);
    try {
      plant.Advance(t, u, dt);
    } catch (const SimulationDiverged& e) {
      commit_best();
      summary.end_time = t;
      summary.failed = true;
      summary.failure = e.what();
      summary.true_params = plant.TrueParams(t);
      summary.evaluations = state.model().size();
      summary.mean_prediction_seconds =
          total_prediction_seconds / summary.proposals;
      if (on_failure) on_failure(ep);
      throw;
    }
    ++ep.steps;
    const double applied_at = t;
    t = time_at(ep.steps);

    const Clock::time_point update_start = Clock::now();
    state = UpdateIncumbent(std::move(state), proposal.point, value);
    pending_update_seconds = SecondsSince(update_start);

    ep.records.push_back({episode_index, i,
                          proposal.exploration_fallback
                              ? RecordKind::kFallback
                              : RecordKind::kExpectedImprovement,
                          applied_at, proposal.point, value,
                          state.incumbent().best_observed,
                          plant.active_params(), seconds});
  }

  commit_best();
  summary.end_time = t;
  summary.true_params = plant.TrueParams(t);
  summary.evaluations = state.model().size();
  summary.mean_prediction_seconds =
      summary.proposals > 0 ? total_prediction_seconds / summary.proposals
                            : 0.0;
  return ep;
}

EpisodeResult RunBaselineEpisode(EstimationPlant& plant,
                                 const EstimatorConfig& cfg,
                                 const BaselineConfig& baseline,
                                 EstimationMethod method, int episode_index,
                                 double t, NoiseStreams& streams) {
  cfg.Validate();
  if (cfg.domain.dim() != plant.param_dim()) {
    throw InvalidArgument("estimator domain does not match plant parameters");
  }
  EpisodeResult ep;
  EpisodeSummary& summary = ep.summary;
  summary.index = episode_index;
  summary.method = method;
  summary.trigger_time = t;
  summary.trigger_error = plant.TrackingError(t);

  BaselineConfig solve = baseline;
  solve.method = method == EstimationMethod::kSimplex
                     ? BaselineMethod::kSimplex
                     : BaselineMethod::kLocalGradient;
  if (solve.start.size() == 0) solve.start = plant.NominalParams();

  const Eigen::VectorXd u = plant.ComputeControl(t);
  const Eigen::VectorXd y = AddNoise(plant.TrueChannels(t, u),
                                     cfg.measurement_noise_std,
                                     streams.measurement);
  ResidualObjective objective(
      y, [&](const ParameterVector& th) { return plant.ModelChannels(u, th); },
      cfg.residual_noise_std, &streams.residual, cfg.channel_weights);

  double best = std::numeric_limits<double>::infinity();
  int evaluation = 0;
  auto logged = [&](const Eigen::VectorXd& theta) {
    const double value = objective.Evaluate(theta);
    best = std::min(best, value);
    ep.records.push_back({episode_index, ++evaluation, RecordKind::kBaseline, t,
                          theta, value, best, plant.active_params(), 0.0});
    return value;
  };
  const BaselineResult result = SolveBaseline(logged, cfg.domain, solve);
  plant.Reconfigure(result.theta);

  summary.end_time = t;
  summary.estimate = result.theta;
  summary.estimate_residual = result.objective;
  summary.true_params = plant.TrueParams(t);
  summary.evaluations = result.evaluations;
  summary.proposals = 1;
  summary.mean_prediction_seconds = result.wall_seconds;
  return ep;
}

std::optional<double> SupervisionResult::first_trigger_time() const {
  if (trace.episodes.empty()) return std::nullopt;
  return trace.episodes.front().trigger_time;
}

void Supervise(EstimationPlant& plant, const SupervisorConfig& cfg,
               SupervisionResult* result) {
  if (!(cfg.t0 < cfg.tf)) throw InvalidArgument("supervise needs t0 < tf");
  if (!(cfg.dt > 0.0)) throw InvalidArgument("supervise needs dt > 0");
  if (cfg.method != EstimationMethod::kNone) cfg.estimator.Validate();

  const long total_steps = std::lround((cfg.tf - cfg.t0) / cfg.dt);
  NoiseStreams streams(cfg.estimator.seed);
  double refractory_until = -std::numeric_limits<double>::infinity();
  long last_episode_end = -1;
  int episode_index = 0;

  auto log_sample = [&](double t, const Eigen::VectorXd& u, int episode) {
    TrajectorySample s;
    s.time = t;
    s.state = plant.StateVector();
    s.axes = plant.AxisValues();
    s.reference = plant.AxisReference(t);
    s.control = u;
    s.active = plant.active_params();
    s.tracking_error = plant.TrackingError(t);
    s.episode = episode;
    result->trajectory.push_back(std::move(s));
  };
  auto append = [&](const EpisodeResult& ep) {
    result->trace.records.insert(result->trace.records.end(),
                                 ep.records.begin(), ep.records.end());
    result->trace.episodes.push_back(ep.summary);
  };

  long k = 0;
  try {
    while (k <= total_steps) {
      const double t = cfg.t0 + k * cfg.dt;
      const Eigen::VectorXd u = plant.ComputeControl(t);
      if (k == total_steps) {
        log_sample(t, u, -1);
        break;
      }
      const double error = plant.TrackingError(t);
      const bool trigger = cfg.method != EstimationMethod::kNone &&
                           error >= cfg.estimator.error_threshold &&
                           t >= refractory_until && k > last_episode_end;
      if (trigger) {
        if (cfg.method == EstimationMethod::kBo) {
          EpisodeResult ep = RunEpisode(
              plant, cfg.estimator, episode_index, cfg.t0, k, cfg.dt,
              static_cast<int>(total_steps - k), streams, log_sample,
              append);
          k += ep.steps;
          append(ep);
        } else {
          append(RunBaselineEpisode(plant, cfg.estimator, cfg.baseline,
                                    cfg.method, episode_index, t, streams));
        }
        ++episode_index;
        last_episode_end = k;
        refractory_until = cfg.t0 + k * cfg.dt + cfg.estimator.refractory;
        continue;
      }
      log_sample(t, u, -1);
      plant.Advance(t, u, cfg.dt);
      ++k;
    }
  } catch (const SimulationDiverged& e) {
    result->diverged = true;
    result->divergence_time = e.time();
    result->failure = e.what();
    throw;
  }
}

SupervisionResult Supervise(EstimationPlant& plant,
                            const SupervisorConfig& cfg) {
  SupervisionResult result;
  Supervise(plant, cfg, &result);
  return result;
}

}  // namespace bopest
