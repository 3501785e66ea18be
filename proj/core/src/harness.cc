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

#include "bopest/harness.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "bopest/error.h"
#include "bopest/random.h"

namespace bopest {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// JSON helpers

[[noreturn]] void Fail(const std::string& path, const std::string& message) {
  throw InvalidConfig(path.empty() ? message : path + ": " + message);
}

void CheckKeys(const Json& j, const std::string& path,
               std::initializer_list<const char*> allowed) {
  if (!j.is_object()) Fail(path, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) Fail(path, "unknown key '" + item.key() + "'");
  }
}

double ReadDouble(const Json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  return j.get<double>();
}

int ReadInt(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<int>();
}

bool ReadBool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) Fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string ReadString(const Json& j, const std::string& path) {
  if (!j.is_string()) Fail(path, "expected a string");
  return j.get<std::string>();
}

Eigen::VectorXd ReadVector(const Json& j, const std::string& path,
                           int expected = -1) {
  if (!j.is_array()) Fail(path, "expected an array of numbers");
  if (expected >= 0 && static_cast<int>(j.size()) != expected) {
    Fail(path, "expected " + std::to_string(expected) + " entries");
  }
  Eigen::VectorXd v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<int>(i)] = ReadDouble(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

template <typename F>
void Optional(const Json& j, const char* key, const std::string& path, F&& f) {
  if (j.contains(key)) f(j.at(key), path + "." + key);
}

Json ToJson(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json ToJson(const PendulumParams& p) {
  return {{"mass", p.mass},
          {"length", p.length},
          {"friction", p.friction},
          {"gravity", p.gravity}};
}

void ReadPendulumParams(const Json& j, const std::string& path,
                        PendulumParams* p) {
  CheckKeys(j, path, {"mass", "length", "friction", "gravity"});
  Optional(j, "mass", path, [&](const Json& v, const std::string& s) { p->mass = ReadDouble(v, s); });
  Optional(j, "length", path, [&](const Json& v, const std::string& s) { p->length = ReadDouble(v, s); });
  Optional(j, "friction", path, [&](const Json& v, const std::string& s) { p->friction = ReadDouble(v, s); });
  Optional(j, "gravity", path, [&](const Json& v, const std::string& s) { p->gravity = ReadDouble(v, s); });
}

std::string_view IncumbentModeName(IncumbentMode mode) {
  return mode == IncumbentMode::kBestObserved ? "best-observed"
                                              : "best-posterior-mean";
}

void ReadPendulum(const Json& j, const std::string& path,
                  ExperimentConfig* cfg) {
  CheckKeys(j, path,
            {"before", "after", "jump_time", "gains", "reference", "initial"});
  Optional(j, "before", path, [&](const Json& v, const std::string& s) {
    ReadPendulumParams(v, s, &cfg->pendulum_schedule.before);
  });
  Optional(j, "after", path, [&](const Json& v, const std::string& s) {
    ReadPendulumParams(v, s, &cfg->pendulum_schedule.after);
  });
  Optional(j, "jump_time", path, [&](const Json& v, const std::string& s) {
    cfg->pendulum_schedule.jump_time = ReadDouble(v, s);
  });
  Optional(j, "gains", path, [&](const Json& v, const std::string& s) {
    CheckKeys(v, s, {"kp", "kd"});
    Optional(v, "kp", s, [&](const Json& w, const std::string& q) { cfg->pendulum_gains.kp = ReadDouble(w, q); });
    Optional(v, "kd", s, [&](const Json& w, const std::string& q) { cfg->pendulum_gains.kd = ReadDouble(w, q); });
  });
  Optional(j, "reference", path, [&](const Json& v, const std::string& s) {
    CheckKeys(v, s, {"angle", "rate"});
    Optional(v, "angle", s, [&](const Json& w, const std::string& q) { cfg->pendulum_reference.angle = ReadDouble(w, q); });
    Optional(v, "rate", s, [&](const Json& w, const std::string& q) { cfg->pendulum_reference.rate = ReadDouble(w, q); });
  });
  Optional(j, "initial", path, [&](const Json& v, const std::string& s) {
    if (v.is_null()) {
      cfg->pendulum_initial.reset();
      return;
    }
    CheckKeys(v, s, {"angle", "rate"});
    PendulumState x = cfg->pendulum_initial.value_or(
        PendulumState{cfg->pendulum_reference.angle,
                      cfg->pendulum_reference.rate});
    Optional(v, "angle", s, [&](const Json& w, const std::string& q) { x.angle = ReadDouble(w, q); });
    Optional(v, "rate", s, [&](const Json& w, const std::string& q) { x.rate = ReadDouble(w, q); });
    cfg->pendulum_initial = x;
  });
}

void ReadQuadrotor(const Json& j, const std::string& path,
                   ExperimentConfig* cfg) {
  CheckKeys(j, path, {"nominal", "gains", "reference"});
  Optional(j, "nominal", path, [&](const Json& v, const std::string& s) {
    CheckKeys(v, s, {"mass", "inertia", "gravity", "inertial_offset"});
    QuadrotorParams& p = cfg->quadrotor_schedule.nominal;
    Optional(v, "mass", s, [&](const Json& w, const std::string& q) { p.mass = ReadDouble(w, q); });
    Optional(v, "inertia", s, [&](const Json& w, const std::string& q) { p.inertia = ReadVector(w, q, 3); });
    Optional(v, "gravity", s, [&](const Json& w, const std::string& q) { p.gravity = ReadDouble(w, q); });
    Optional(v, "inertial_offset", s, [&](const Json& w, const std::string& q) { p.inertial_offset = ReadVector(w, q, 3); });
  });
  Optional(j, "gains", path, [&](const Json& v, const std::string& s) {
    CheckKeys(v, s, {"kr", "kv", "kR", "kOmega"});
    QuadrotorGains& g = cfg->quadrotor_gains;
    Optional(v, "kr", s, [&](const Json& w, const std::string& q) { g.kr = ReadVector(w, q, 3); });
    Optional(v, "kv", s, [&](const Json& w, const std::string& q) { g.kv = ReadVector(w, q, 3); });
    Optional(v, "kR", s, [&](const Json& w, const std::string& q) { g.kR = ReadVector(w, q, 3); });
    Optional(v, "kOmega", s, [&](const Json& w, const std::string& q) { g.kOmega = ReadVector(w, q, 3); });
  });
  Optional(j, "reference", path, [&](const Json& v, const std::string& s) {
    CheckKeys(v, s,
              {"amplitude", "frequency", "offset", "yaw_mode", "fixed_yaw"});
    QuadrotorReference& r = cfg->quadrotor_reference;
    Optional(v, "amplitude", s, [&](const Json& w, const std::string& q) { r.amplitude = ReadVector(w, q, 3); });
    Optional(v, "frequency", s, [&](const Json& w, const std::string& q) { r.frequency = ReadVector(w, q, 3); });
    Optional(v, "offset", s, [&](const Json& w, const std::string& q) { r.offset = ReadVector(w, q, 3); });
    Optional(v, "fixed_yaw", s, [&](const Json& w, const std::string& q) { r.fixed_yaw = ReadDouble(w, q); });
    Optional(v, "yaw_mode", s, [&](const Json& w, const std::string& q) {
      const std::string mode = ReadString(w, q);
      if (mode == "heading") {
        r.yaw_mode = QuadrotorReference::YawMode::kHeading;
      } else if (mode == "fixed") {
        r.yaw_mode = QuadrotorReference::YawMode::kFixed;
      } else {
        Fail(q, "expected 'heading' or 'fixed'");
      }
    });
  });
}

void ReadGp(const Json& j, const std::string& path, int dim, BoOptions* bo) {
  CheckKeys(j, path,
            {"fit_hyperparams", "restarts", "max_evals_per_restart",
             "fit_noise", "refit_all_until", "refit_every", "incumbent_mode",
             "standardize_targets", "initial_signal_variance",
             "initial_lengthscale", "initial_noise_variance"});
  Optional(j, "fit_hyperparams", path, [&](const Json& v, const std::string& s) { bo->fit_hyperparams = ReadBool(v, s); });
  Optional(j, "restarts", path, [&](const Json& v, const std::string& s) { bo->fit.restarts = ReadInt(v, s); });
  Optional(j, "max_evals_per_restart", path, [&](const Json& v, const std::string& s) { bo->fit.max_evals_per_restart = ReadInt(v, s); });
  Optional(j, "fit_noise", path, [&](const Json& v, const std::string& s) { bo->fit.fit_noise = ReadBool(v, s); });
  Optional(j, "refit_all_until", path, [&](const Json& v, const std::string& s) { bo->refit_all_until = ReadInt(v, s); });
  Optional(j, "refit_every", path, [&](const Json& v, const std::string& s) { bo->refit_every = ReadInt(v, s); });
  Optional(j, "standardize_targets", path, [&](const Json& v, const std::string& s) { bo->gp.standardize_targets = ReadBool(v, s); });
  Optional(j, "initial_signal_variance", path, [&](const Json& v, const std::string& s) { bo->initial_hyperparams.signal_variance = ReadDouble(v, s); });
  Optional(j, "initial_lengthscale", path, [&](const Json& v, const std::string& s) {
    bo->initial_hyperparams.lengthscales =
        Eigen::VectorXd::Constant(dim, ReadDouble(v, s));
  });
  Optional(j, "initial_noise_variance", path, [&](const Json& v, const std::string& s) { bo->initial_hyperparams.noise_variance = ReadDouble(v, s); });
  Optional(j, "incumbent_mode", path, [&](const Json& v, const std::string& s) {
    const std::string mode = ReadString(v, s);
    if (mode == "best-observed") {
      bo->incumbent_mode = IncumbentMode::kBestObserved;
    } else if (mode == "best-posterior-mean") {
      bo->incumbent_mode = IncumbentMode::kBestPosteriorMean;
    } else {
      Fail(s, "expected 'best-observed' or 'best-posterior-mean'");
    }
  });
}

void ReadEstimator(const Json& j, const std::string& path,
                   EstimatorConfig* est) {
  CheckKeys(j, path,
            {"lower", "upper", "error_threshold", "budget", "initial_samples",
             "refractory", "measurement_noise_std", "residual_noise_std",
             "channel_weights", "acquisition", "gp"});
  Eigen::VectorXd lower = est->domain.lower();
  Eigen::VectorXd upper = est->domain.upper();
  Optional(j, "lower", path, [&](const Json& v, const std::string& s) { lower = ReadVector(v, s); });
  Optional(j, "upper", path, [&](const Json& v, const std::string& s) { upper = ReadVector(v, s); });
  try {
    est->domain = Domain(lower, upper);
  } catch (const Error& e) {
    Fail(path, std::string("invalid domain: ") + e.what());
  }
  const int dim = est->domain.dim();
  Optional(j, "error_threshold", path, [&](const Json& v, const std::string& s) { est->error_threshold = ReadDouble(v, s); });
  Optional(j, "budget", path, [&](const Json& v, const std::string& s) { est->budget = ReadInt(v, s); });
  Optional(j, "initial_samples", path, [&](const Json& v, const std::string& s) { est->initial_samples = ReadInt(v, s); });
  Optional(j, "refractory", path, [&](const Json& v, const std::string& s) { est->refractory = ReadDouble(v, s); });
  Optional(j, "measurement_noise_std", path, [&](const Json& v, const std::string& s) { est->measurement_noise_std = ReadDouble(v, s); });
  Optional(j, "residual_noise_std", path, [&](const Json& v, const std::string& s) { est->residual_noise_std = ReadDouble(v, s); });
  Optional(j, "channel_weights", path, [&](const Json& v, const std::string& s) { est->channel_weights = ReadVector(v, s); });
  Optional(j, "acquisition", path, [&](const Json& v, const std::string& s) {
    CheckKeys(v, s,
              {"exploration_offset", "multistart_count", "candidate_pool_size",
               "refine_max_evals"});
    AcquisitionConfig& a = est->acquisition;
    Optional(v, "exploration_offset", s, [&](const Json& w, const std::string& q) { a.exploration_offset = ReadDouble(w, q); });
    Optional(v, "multistart_count", s, [&](const Json& w, const std::string& q) { a.multistart_count = ReadInt(w, q); });
    Optional(v, "candidate_pool_size", s, [&](const Json& w, const std::string& q) { a.candidate_pool_size = ReadInt(w, q); });
    Optional(v, "refine_max_evals", s, [&](const Json& w, const std::string& q) { a.refine_max_evals = ReadInt(w, q); });
  });
  if (!est->bo || est->bo->initial_hyperparams.dim() != dim) {
    est->bo = DefaultBoOptions(dim);
  }
  Optional(j, "gp", path, [&](const Json& v, const std::string& s) {
    ReadGp(v, s, dim, &*est->bo);
  });
}

void ReadBaseline(const Json& j, const std::string& path,
                  BaselineConfig* b) {
  CheckKeys(j, path,
            {"start", "max_evals", "fd_step_fraction", "initial_step_fraction",
             "simplex_step_fraction", "x_tol", "f_tol"});
  Optional(j, "start", path, [&](const Json& v, const std::string& s) {
    b->start = v.is_null() ? ParameterVector() : ReadVector(v, s);
  });
  Optional(j, "max_evals", path, [&](const Json& v, const std::string& s) { b->max_evals = ReadInt(v, s); });
  Optional(j, "fd_step_fraction", path, [&](const Json& v, const std::string& s) { b->fd_step_fraction = ReadDouble(v, s); });
  Optional(j, "initial_step_fraction", path, [&](const Json& v, const std::string& s) { b->initial_step_fraction = ReadDouble(v, s); });
  Optional(j, "simplex_step_fraction", path, [&](const Json& v, const std::string& s) { b->simplex_step_fraction = ReadDouble(v, s); });
  Optional(j, "x_tol", path, [&](const Json& v, const std::string& s) { b->x_tol = ReadDouble(v, s); });
  Optional(j, "f_tol", path, [&](const Json& v, const std::string& s) { b->f_tol = ReadDouble(v, s); });
}

Json ConfigJson(const ExperimentConfig& cfg) {
  Json j;
  j["scenario"] = std::string(ScenarioName(cfg.scenario));
  j["seed"] = cfg.seed;
  j["t0"] = cfg.t0;
  j["tf"] = cfg.tf;
  j["dt"] = cfg.dt;
  j["integrator"] = std::string(IntegratorName(cfg.integrator));
  Json methods = Json::array();
  for (EstimationMethod m : cfg.methods) {
    methods.push_back(std::string(EstimationMethodName(m)));
  }
  j["methods"] = methods;

  Json pend;
  pend["before"] = ToJson(cfg.pendulum_schedule.before);
  pend["after"] = ToJson(cfg.pendulum_schedule.after);
  pend["jump_time"] = cfg.pendulum_schedule.jump_time;
  pend["gains"] = {{"kp", cfg.pendulum_gains.kp}, {"kd", cfg.pendulum_gains.kd}};
  pend["reference"] = {{"angle", cfg.pendulum_reference.angle},
                       {"rate", cfg.pendulum_reference.rate}};
  if (cfg.pendulum_initial) {
    pend["initial"] = {{"angle", cfg.pendulum_initial->angle},
                       {"rate", cfg.pendulum_initial->rate}};
  } else {
    pend["initial"] = nullptr;
  }
  j["pendulum"] = pend;

  const QuadrotorParams& qn = cfg.quadrotor_schedule.nominal;
  const QuadrotorGains& qg = cfg.quadrotor_gains;
  const QuadrotorReference& qr = cfg.quadrotor_reference;
  Json quad;
  quad["nominal"] = {{"mass", qn.mass},
                     {"inertia", ToJson(qn.inertia)},
                     {"gravity", qn.gravity},
                     {"inertial_offset", ToJson(qn.inertial_offset)}};
  quad["gains"] = {{"kr", ToJson(qg.kr)},
                   {"kv", ToJson(qg.kv)},
                   {"kR", ToJson(qg.kR)},
                   {"kOmega", ToJson(qg.kOmega)}};
  quad["reference"] = {
      {"amplitude", ToJson(qr.amplitude)},
      {"frequency", ToJson(qr.frequency)},
      {"offset", ToJson(qr.offset)},
      {"yaw_mode", qr.yaw_mode == QuadrotorReference::YawMode::kHeading
                       ? "heading"
                       : "fixed"},
      {"fixed_yaw", qr.fixed_yaw}};
  j["quadrotor"] = quad;

  const EstimatorConfig& est = cfg.estimator;
  Json e;
  e["lower"] = ToJson(est.domain.lower());
  e["upper"] = ToJson(est.domain.upper());
  e["error_threshold"] = est.error_threshold;
  e["budget"] = est.budget;
  e["initial_samples"] = est.initial_samples;
  e["refractory"] = est.refractory;
  e["measurement_noise_std"] = est.measurement_noise_std;
  e["residual_noise_std"] = est.residual_noise_std;
  e["channel_weights"] = ToJson(est.channel_weights);
  e["acquisition"] = {
      {"exploration_offset", est.acquisition.exploration_offset},
      {"multistart_count", est.acquisition.multistart_count},
      {"candidate_pool_size", est.acquisition.candidate_pool_size},
      {"refine_max_evals", est.acquisition.refine_max_evals}};
  const BoOptions bo = est.bo.value_or(DefaultBoOptions(est.domain.dim()));
  e["gp"] = {
      {"fit_hyperparams", bo.fit_hyperparams},
      {"restarts", bo.fit.restarts},
      {"max_evals_per_restart", bo.fit.max_evals_per_restart},
      {"fit_noise", bo.fit.fit_noise},
      {"refit_all_until", bo.refit_all_until},
      {"refit_every", bo.refit_every},
      {"incumbent_mode", std::string(IncumbentModeName(bo.incumbent_mode))},
      {"standardize_targets", bo.gp.standardize_targets},
      {"initial_signal_variance", bo.initial_hyperparams.signal_variance},
      {"initial_lengthscale", bo.initial_hyperparams.lengthscales.size() > 0
                                  ? bo.initial_hyperparams.lengthscales[0]
                                  : 0.2},
      {"initial_noise_variance", bo.initial_hyperparams.noise_variance}};
  j["estimator"] = e;

  const BaselineConfig& b = cfg.baseline;
  j["baseline"] = {
      {"start", b.start.size() > 0 ? ToJson(b.start) : Json(nullptr)},
      {"max_evals", b.max_evals},
      {"fd_step_fraction", b.fd_step_fraction},
      {"initial_step_fraction", b.initial_step_fraction},
      {"simplex_step_fraction", b.simplex_step_fraction},
      {"x_tol", b.x_tol},
      {"f_tol", b.f_tol}};

  Json instants = Json::array();
  for (double t : cfg.table_instants) instants.push_back(t);
  j["table_instants"] = instants;
  j["demo"] = {{"seed_points", cfg.demo.seed_points},
               {"max_proposals", cfg.demo.max_proposals},
               {"tolerance", cfg.demo.tolerance}};
  j["output_dir"] = cfg.output_dir;
  return j;
}

// ---------------------------------------------------------------------------
// Scenario plumbing

std::unique_ptr<EstimationPlant> MakePlant(const ExperimentConfig& cfg) {
  if (cfg.scenario == Scenario::kPendulum) {
    const PendulumState initial = cfg.pendulum_initial.value_or(PendulumState{
        cfg.pendulum_reference.angle, cfg.pendulum_reference.rate});
    return std::make_unique<PendulumPlant>(
        cfg.pendulum_schedule, cfg.pendulum_gains, cfg.pendulum_reference,
        initial, cfg.integrator);
  }
  return std::make_unique<QuadrotorPlant>(
      cfg.quadrotor_schedule, cfg.quadrotor_gains, cfg.quadrotor_reference,
      cfg.integrator, cfg.dt);
}

template <typename Fn>
void Wrap(const std::string& what, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidConfig&) {
    throw;
  } catch (const Error& e) {
    Fail(what, e.what());
  }
}

MethodMetrics Metrics(const MethodRun& run, double t0, double tf) {
  const SupervisionResult& r = run.result;
  MethodMetrics m;
  m.method = run.method;
  m.axes = run.axis_names;
  m.first_trigger = r.first_trigger_time();
  m.episodes = static_cast<int>(r.trace.episodes.size());
  m.diverged = r.diverged;
  double seconds = 0.0;
  for (const EpisodeSummary& ep : r.trace.episodes) {
    seconds += ep.mean_prediction_seconds;
  }
  if (m.episodes > 0) m.mean_prediction_seconds = seconds / m.episodes;
  if (r.trajectory.empty()) return m;
  const double end = r.diverged ? r.trajectory.back().time : tf;
  for (int a = 0; a < static_cast<int>(run.axis_names.size()); ++a) {
    m.mse_full.push_back(ComputeMse(r.trajectory, a, t0, end));
    if (m.first_trigger && *m.first_trigger <= end) {
      m.mse_post_trigger.push_back(
          ComputeMse(r.trajectory, a, *m.first_trigger, end));
    }
  }
  m.final_params = r.trajectory.back().active;
  m.final_tracking_error = r.trajectory.back().tracking_error;
  return m;
}

// ---------------------------------------------------------------------------
// Artifact writers

std::string Header(const ExperimentConfig& cfg) {
  return "# seed=" + std::to_string(cfg.seed) + "\n# config=" +
         ConfigJson(cfg).dump() + "\n";
}

void AppendVector(std::ostringstream& os, const Eigen::VectorXd& v, int n) {
  for (int i = 0; i < n; ++i) {
    os << ',' << (i < v.size() ? FormatDouble(v[i]) : std::string());
  }
}

void AppendNames(std::ostringstream& os, const std::vector<std::string>& names,
                 const std::string& prefix, const std::string& suffix = "") {
  for (const std::string& n : names) os << ',' << prefix << n << suffix;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open " + path.string());
  out << text;
  if (!out) throw InvalidArgument("failed writing " + path.string());
}

Json NumberOrNull(double v) {
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json Named(const std::vector<std::string>& names, const std::vector<double>& v) {
  Json o = Json::object();
  for (std::size_t i = 0; i < v.size() && i < names.size(); ++i) {
    o[names[i]] = NumberOrNull(v[i]);
  }
  return o;
}

Json Named(const std::vector<std::string>& names, const Eigen::VectorXd& v) {
  return Named(names, std::vector<double>(v.data(), v.data() + v.size()));
}

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view ScenarioName(Scenario scenario) {
  switch (scenario) {
    case Scenario::kBoDemo1d:
      return "bo-demo-1d";
    case Scenario::kPendulum:
      return "pendulum";
    case Scenario::kQuadrotor:
      return "quadrotor";
  }
  return "unknown";
}

std::optional<Scenario> ParseScenario(std::string_view name) {
  if (name == "bo-demo-1d") return Scenario::kBoDemo1d;
  if (name == "pendulum") return Scenario::kPendulum;
  if (name == "quadrotor") return Scenario::kQuadrotor;
  return std::nullopt;
}

ExperimentConfig DefaultConfig(Scenario scenario) {
  ExperimentConfig cfg;
  cfg.scenario = scenario;
  cfg.seed = 1;
  cfg.t0 = 0.0;
  cfg.dt = 0.005;
  cfg.integrator = Integrator::kEuler;
  EstimatorConfig& est = cfg.estimator;
  est.budget = 30;
  est.initial_samples = 5;
  est.refractory = 0.5;
  est.residual_noise_std = 0.01;
  switch (scenario) {
    case Scenario::kBoDemo1d:
      cfg.tf = 1.0;
      cfg.methods = {EstimationMethod::kBo};
      est.domain = Domain::UnitCube(1);
      break;
    case Scenario::kPendulum:
      cfg.tf = 10.0;
      cfg.methods = {EstimationMethod::kNone, EstimationMethod::kBo,
                     EstimationMethod::kLocalGradient,
                     EstimationMethod::kSimplex};
      cfg.pendulum_reference = {kPi / 3.0, 0.0};
      est.domain = Domain(Eigen::Vector2d(0.1, 0.1), Eigen::Vector2d(5.0, 3.0));
      est.error_threshold = 0.01;
      est.measurement_noise_std = 1e-3;
      break;
    case Scenario::kQuadrotor:
      cfg.tf = 16.0;
      cfg.methods = {EstimationMethod::kNone, EstimationMethod::kBo,
                     EstimationMethod::kLocalGradient,
                     EstimationMethod::kSimplex};
      est.domain = Domain(Eigen::Vector4d(0.5, 0.1, 0.1, 0.1),
                          Eigen::Vector4d(4.0, 12.0, 12.0, 12.0));
      est.error_threshold = 0.05;
      est.measurement_noise_std = 3.2e-3 / std::sqrt(6.0);
      cfg.table_instants = {1.5, 5.0, 8.0, 11.0, 14.0};
      break;
  }
  est.bo = DefaultBoOptions(est.domain.dim());
  cfg.baseline.max_evals = est.initial_samples + est.budget;
  return cfg;
}

void ExperimentConfig::Validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) Fail("dt", "must be positive");
  if (scenario == Scenario::kBoDemo1d) {
    if (demo.seed_points < 1) Fail("demo.seed_points", "must be >= 1");
    if (demo.max_proposals < 1) Fail("demo.max_proposals", "must be >= 1");
    if (!(demo.tolerance > 0.0)) Fail("demo.tolerance", "must be positive");
    return;
  }
  if (!(tf > t0)) Fail("tf", "must exceed t0");
  if (dt > tf - t0) Fail("dt", "must not exceed the time span");
  if (methods.empty()) Fail("methods", "at least one method is required");
  std::set<EstimationMethod> seen(methods.begin(), methods.end());
  if (seen.size() != methods.size()) Fail("methods", "duplicate entries");

  const int dim = scenario == Scenario::kPendulum ? 2 : 4;
  const int channels = scenario == Scenario::kPendulum ? 1 : 6;
  if (estimator.domain.dim() != dim) {
    Fail("estimator", "domain must have " + std::to_string(dim) + " entries");
  }
  if (estimator.channel_weights.size() != 0 &&
      estimator.channel_weights.size() != channels) {
    Fail("estimator.channel_weights",
         "expected " + std::to_string(channels) + " entries");
  }
  Wrap("estimator", [&] { estimator.Validate(); });
  if (estimator.bo) {
    const BoOptions& bo = *estimator.bo;
    Wrap("estimator.gp", [&] { bo.initial_hyperparams.Validate(); });
    if (bo.initial_hyperparams.dim() != dim) {
      Fail("estimator.gp", "hyperparameter dimension mismatch");
    }
    if (bo.fit.restarts < 1) Fail("estimator.gp.restarts", "must be >= 1");
    if (bo.fit.max_evals_per_restart < 1) {
      Fail("estimator.gp.max_evals_per_restart", "must be >= 1");
    }
    if (bo.refit_every < 1) Fail("estimator.gp.refit_every", "must be >= 1");
  }

  ParameterVector nominal;
  if (scenario == Scenario::kPendulum) {
    Wrap("pendulum.before", [&] { pendulum_schedule.before.Validate(); });
    Wrap("pendulum.after", [&] { pendulum_schedule.after.Validate(); });
    Wrap("pendulum.gains", [&] { pendulum_gains.Validate(); });
    nominal = Eigen::Vector2d(pendulum_schedule.before.mass,
                              pendulum_schedule.before.length);
  } else {
    Wrap("quadrotor.nominal", [&] { quadrotor_schedule.nominal.Validate(); });
    Wrap("quadrotor.gains", [&] { quadrotor_gains.Validate(); });
    nominal = QuadrotorPlant::ThetaFrom(quadrotor_schedule.nominal);
    for (double t : table_instants) {
      if (!(t >= t0 && t <= tf)) {
        Fail("table_instants", "instant " + FormatDouble(t) +
                                   " outside the scenario span");
      }
    }
  }
  BaselineConfig b = baseline;
  if (b.start.size() == 0) b.start = nominal;
  Wrap("baseline", [&] { b.Validate(estimator.domain); });
}

ExperimentConfig ParseConfig(std::string_view text,
                             std::optional<std::uint64_t> seed_override) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end(), nullptr, true,
                    /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw InvalidConfig(std::string("malformed config: ") + e.what());
  }
  CheckKeys(j, "",
            {"scenario", "seed", "t0", "tf", "dt", "integrator", "methods",
             "pendulum", "quadrotor", "estimator", "baseline",
             "table_instants", "demo", "output_dir"});
  if (!j.contains("scenario")) Fail("scenario", "is required");
  const std::string name = ReadString(j.at("scenario"), "scenario");
  const std::optional<Scenario> scenario = ParseScenario(name);
  if (!scenario) Fail("scenario", "unknown scenario '" + name + "'");

  ExperimentConfig cfg = DefaultConfig(*scenario);
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_unsigned()) Fail("seed", "expected a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  } else if (!seed_override) {
    Fail("seed", "is required");
  }
  if (seed_override) cfg.seed = *seed_override;

  Optional(j, "t0", "", [&](const Json& v, const std::string& s) { cfg.t0 = ReadDouble(v, s); });
  Optional(j, "tf", "", [&](const Json& v, const std::string& s) { cfg.tf = ReadDouble(v, s); });
  Optional(j, "dt", "", [&](const Json& v, const std::string& s) { cfg.dt = ReadDouble(v, s); });
  Optional(j, "integrator", "", [&](const Json& v, const std::string& s) {
    const std::string value = ReadString(v, s);
    const std::optional<Integrator> integrator = ParseIntegrator(value);
    if (!integrator) Fail(s, "expected 'euler' or 'rk4'");
    cfg.integrator = *integrator;
  });
  Optional(j, "methods", "", [&](const Json& v, const std::string& s) {
    if (!v.is_array()) Fail(s, "expected an array of method names");
    cfg.methods.clear();
    for (const Json& m : v) {
      const std::string value = ReadString(m, s);
      const std::optional<EstimationMethod> method =
          ParseEstimationMethod(value);
      if (!method) Fail(s, "unknown method '" + value + "'");
      cfg.methods.push_back(*method);
    }
  });
  Optional(j, "pendulum", "", [&](const Json& v, const std::string& s) { ReadPendulum(v, s, &cfg); });
  Optional(j, "quadrotor", "", [&](const Json& v, const std::string& s) { ReadQuadrotor(v, s, &cfg); });
  Optional(j, "estimator", "", [&](const Json& v, const std::string& s) { ReadEstimator(v, s, &cfg.estimator); });
  Optional(j, "baseline", "", [&](const Json& v, const std::string& s) { ReadBaseline(v, s, &cfg.baseline); });
  Optional(j, "table_instants", "", [&](const Json& v, const std::string& s) {
    const Eigen::VectorXd t = ReadVector(v, s);
    cfg.table_instants.assign(t.data(), t.data() + t.size());
  });
  Optional(j, "demo", "", [&](const Json& v, const std::string& s) {
    CheckKeys(v, s, {"seed_points", "max_proposals", "tolerance"});
    Optional(v, "seed_points", s, [&](const Json& w, const std::string& q) { cfg.demo.seed_points = ReadInt(w, q); });
    Optional(v, "max_proposals", s, [&](const Json& w, const std::string& q) { cfg.demo.max_proposals = ReadInt(w, q); });
    Optional(v, "tolerance", s, [&](const Json& w, const std::string& q) { cfg.demo.tolerance = ReadDouble(w, q); });
  });
  Optional(j, "output_dir", "", [&](const Json& v, const std::string& s) { cfg.output_dir = ReadString(v, s); });
  cfg.estimator.seed = cfg.seed;
  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path,
                            std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidConfig("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), seed_override);
}

std::string ConfigToJson(const ExperimentConfig& cfg) {
  return ConfigJson(cfg).dump(2);
}

double ComputeMse(std::span<const double> time, std::span<const double> actual,
                  std::span<const double> reference, double window_start,
                  double window_end) {
  if (time.size() != actual.size() || time.size() != reference.size()) {
    throw InvalidArgument("time, actual and reference lengths differ");
  }
  std::vector<std::size_t> order(time.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return time[a] < time[b];
  });
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i : order) {
    if (time[i] < window_start || time[i] > window_end) continue;
    const double e = actual[i] - reference[i];
    sum += e * e;
    ++count;
  }
  if (count == 0) throw InvalidArgument("MSE window contains no samples");
  return sum / static_cast<double>(count);
}

double ComputeMse(const std::vector<TrajectorySample>& trajectory, int axis,
                  double window_start, double window_end) {
  std::vector<double> t, a, r;
  t.reserve(trajectory.size());
  a.reserve(trajectory.size());
  r.reserve(trajectory.size());
  for (const TrajectorySample& s : trajectory) {
    if (axis < 0 || axis >= s.axes.size()) {
      throw InvalidArgument("axis index out of range");
    }
    t.push_back(s.time);
    a.push_back(s.axes[axis]);
    r.push_back(s.reference[axis]);
  }
  return ComputeMse(t, a, r, window_start, window_end);
}

double DemoObjective(double x) {
  const double a = 6.0 * x - 2.0;
  return a * a * std::sin(12.0 * x - 4.0);
}

double DemoMinimizer() {
  // golden-section search on the basin around the global minimum
  static const double x_min = [] {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.7, b = 0.8;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    for (int i = 0; i < 200; ++i) {
      if (DemoObjective(c) < DemoObjective(d)) {
        b = d;
      } else {
        a = c;
      }
      c = b - phi * (b - a);
      d = a + phi * (b - a);
    }
    return 0.5 * (a + b);
  }();
  return x_min;
}

DemoResult RunDemo1d(std::uint64_t seed, const DemoConfig& cfg) {
  if (cfg.seed_points < 1 || cfg.max_proposals < 1 || !(cfg.tolerance > 0.0)) {
    throw InvalidArgument("invalid demo configuration");
  }
  DemoResult result;
  result.minimizer = DemoMinimizer();
  const Domain domain = Domain::UnitCube(1);
  Rng rng(DeriveSeed(seed, 1));

  Dataset data;
  double best_x = 0.0;
  double best_y = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.seed_points; ++i) {
    const double x = Uniform01(rng);
    const double y = DemoObjective(x);
    data.Add(Eigen::VectorXd::Constant(1, x), y);
    if (y < best_y) {
      best_y = y;
      best_x = x;
    }
    result.steps.push_back({0, x, y, best_x, best_y, 0.0, 0.0});
  }
  auto check = [&](int proposal) {
    if (!result.proposals_to_tolerance &&
        std::abs(best_x - result.minimizer) <= cfg.tolerance) {
      result.proposals_to_tolerance = proposal;
    }
  };
  check(0);

  BoOptions options = DefaultBoOptions(1);
  options.fit.seed = DeriveSeed(seed, 2);
  options.initial_hyperparams.noise_variance = 1e-6;
  BoState state(domain, cfg.max_proposals, std::move(data), options);
  AcquisitionConfig acquisition;
  for (int i = 1; i <= cfg.max_proposals; ++i) {
    acquisition.rng_seed = DeriveSeed(seed, 100 + i);
    const Clock::time_point start = Clock::now();
    const Proposal p = ProposeNext(state, acquisition);
    const double x = p.point[0];
    const double y = DemoObjective(x);
    state = UpdateIncumbent(std::move(state), p.point, y);
    const double seconds = SecondsSince(start);
    if (y < best_y) {
      best_y = y;
      best_x = x;
    }
    result.steps.push_back(
        {i, x, y, best_x, best_y, p.expected_improvement, seconds});
    check(i);
  }
  result.final_distance = std::abs(best_x - result.minimizer);
  return result;
}

std::vector<AccuracyRow> AccuracyTable(const std::vector<double>& instants,
                                        const QuadrotorSchedule& schedule,
                                        const std::vector<MethodRun>& runs) {
  std::vector<AccuracyRow> rows;
  for (double instant : instants) {
    const ParameterVector truth =
        QuadrotorPlant::ThetaFrom(schedule.TrueParams(instant));
    for (const MethodRun& run : runs) {
      if (run.method == EstimationMethod::kNone) continue;
      AccuracyRow row;
      row.instant = instant;
      row.method = run.method;
      row.true_params = truth;
      const EpisodeSummary* latest = nullptr;
      double seconds = 0.0;
      int count = 0;
      for (const EpisodeSummary& ep : run.result.trace.episodes) {
        if (ep.end_time > instant || ep.estimate.size() != truth.size()) {
          continue;
        }
        latest = &ep;
        seconds += ep.mean_prediction_seconds;
        ++count;
      }
      if (latest == nullptr) {
        row.no_episode = true;
        row.mass_error = std::numeric_limits<double>::quiet_NaN();
        row.inertial_error = std::numeric_limits<double>::quiet_NaN();
      } else {
        row.estimate = latest->estimate;
        row.mass_error = std::abs(row.estimate[0] - truth[0]);
        row.inertial_error = (row.estimate.tail(3) - truth.tail(3)).norm();
        row.mean_prediction_seconds = seconds / count;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

ScenarioOutcome RunScenario(const ExperimentConfig& input) {
  ExperimentConfig cfg = input;
  cfg.estimator.seed = cfg.seed;
  cfg.Validate();
  ScenarioOutcome outcome;
  MetricsReport& report = outcome.report;
  report.scenario = cfg.scenario;
  report.seed = cfg.seed;
  if (cfg.scenario == Scenario::kBoDemo1d) {
    report.demo = RunDemo1d(cfg.seed, cfg.demo);
    return outcome;
  }

  for (EstimationMethod method : cfg.methods) {
    std::unique_ptr<EstimationPlant> plant = MakePlant(cfg);
    MethodRun run;
    run.method = method;
    run.axis_names = plant->AxisNames();
    run.state_names = plant->StateNames();
    run.control_names = plant->ControlNames();
    run.param_names = plant->ParamNames();

    SupervisorConfig sc;
    sc.method = method;
    sc.estimator = cfg.estimator;
    sc.baseline = cfg.baseline;
    if (sc.baseline.start.size() == 0) sc.baseline.start = plant->NominalParams();
    sc.baseline.method = method == EstimationMethod::kSimplex
                             ? BaselineMethod::kSimplex
                             : BaselineMethod::kLocalGradient;
    sc.t0 = cfg.t0;
    sc.tf = cfg.tf;
    sc.dt = cfg.dt;
    try {
      Supervise(*plant, sc, &run.result);
    } catch (const SimulationDiverged&) {
      report.incomplete = true;
    }
    report.methods.push_back(Metrics(run, cfg.t0, cfg.tf));
    outcome.runs.push_back(std::move(run));
  }
  if (cfg.scenario == Scenario::kQuadrotor) {
    report.table =
        AccuracyTable(cfg.table_instants, cfg.quadrotor_schedule, outcome.runs);
  }
  return outcome;
}

void WriteArtifacts(const ScenarioOutcome& outcome,
                    const ExperimentConfig& cfg,
                    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string header = Header(cfg);
  const MetricsReport& report = outcome.report;

  Json metrics;
  metrics["seed"] = cfg.seed;
  metrics["scenario"] = std::string(ScenarioName(cfg.scenario));
  metrics["incomplete"] = report.incomplete;
  metrics["config"] = ConfigJson(cfg);

  std::ostringstream timing;
  timing << header << "scope,method,instant,episode,iteration,seconds\n";

  if (report.demo) {
    const DemoResult& demo = *report.demo;
    std::ostringstream trace;
    trace << header
          << "proposal,x,y,incumbent_x,incumbent_y,expected_improvement\n";
    for (const DemoStep& s : demo.steps) {
      trace << s.proposal << ',' << FormatDouble(s.x) << ','
            << FormatDouble(s.y) << ',' << FormatDouble(s.incumbent_x) << ','
            << FormatDouble(s.incumbent_y) << ','
            << FormatDouble(s.expected_improvement) << '\n';
      if (s.proposal > 0) {
        timing << "proposal,bo,," << 0 << ',' << s.proposal << ','
               << FormatDouble(s.acquisition_seconds) << '\n';
      }
    }
    WriteFile(dir / "bo_trace.csv", trace.str());
    Json d;
    d["minimizer"] = demo.minimizer;
    d["proposals_to_tolerance"] =
        demo.proposals_to_tolerance ? Json(*demo.proposals_to_tolerance)
                                    : Json(nullptr);
    d["final_distance"] = demo.final_distance;
    d["final_incumbent"] = demo.steps.back().incumbent_x;
    metrics["demo"] = d;
    WriteFile(dir / "metrics.json", metrics.dump(2) + "\n");
    WriteFile(dir / "timing.csv", timing.str());
    return;
  }

  if (outcome.runs.empty()) throw InvalidArgument("no method runs to write");
  const MethodRun& first = outcome.runs.front();
  const int ns = static_cast<int>(first.state_names.size());
  const int na = static_cast<int>(first.axis_names.size());
  const int nc = static_cast<int>(first.control_names.size());
  const int np = static_cast<int>(first.param_names.size());

  std::ostringstream traj;
  traj << header << "method,time";
  AppendNames(traj, first.state_names, "");
  AppendNames(traj, first.axis_names, "", "_ref");
  AppendNames(traj, first.control_names, "");
  AppendNames(traj, first.param_names, "active_");
  traj << ",tracking_error,episode\n";

  std::ostringstream trace;
  trace << header << "method,episode,iteration,kind,time";
  AppendNames(trace, first.param_names, "queried_");
  trace << ",residual,incumbent";
  AppendNames(trace, first.param_names, "active_");
  trace << '\n';

  Json methods = Json::array();
  for (std::size_t r = 0; r < outcome.runs.size(); ++r) {
    const MethodRun& run = outcome.runs[r];
    const std::string name(EstimationMethodName(run.method));
    for (const TrajectorySample& s : run.result.trajectory) {
      traj << name << ',' << FormatDouble(s.time);
      AppendVector(traj, s.state, ns);
      AppendVector(traj, s.reference, na);
      AppendVector(traj, s.control, nc);
      AppendVector(traj, s.active, np);
      traj << ',' << FormatDouble(s.tracking_error) << ',' << s.episode
           << '\n';
    }
    for (const EstimationRecord& rec : run.result.trace.records) {
      trace << name << ',' << rec.episode << ',' << rec.iteration << ','
            << RecordKindName(rec.kind) << ',' << FormatDouble(rec.time);
      AppendVector(trace, rec.queried, np);
      trace << ',' << FormatDouble(rec.residual) << ','
            << FormatDouble(rec.incumbent);
      AppendVector(trace, rec.active, np);
      trace << '\n';
      if (rec.kind != RecordKind::kSeed) {
        timing << "proposal," << name << ",," << rec.episode << ','
               << rec.iteration << ',' << FormatDouble(rec.acquisition_seconds)
               << '\n';
      }
    }

    const MethodMetrics& m = report.methods[r];
    Json jm;
    jm["method"] = name;
    jm["mse_full"] = Named(m.axes, m.mse_full);
    jm["mse_post_trigger"] =
        m.mse_post_trigger.empty() ? Json(nullptr)
                                   : Named(m.axes, m.mse_post_trigger);
    jm["first_trigger"] =
        m.first_trigger ? Json(*m.first_trigger) : Json(nullptr);
    jm["episodes"] = m.episodes;
    jm["final_params"] = Named(run.param_names, m.final_params);
    jm["final_tracking_error"] = m.final_tracking_error;
    jm["diverged"] = m.diverged;
    if (m.diverged) {
      jm["divergence_time"] = run.result.divergence_time;
      jm["failure"] = run.result.failure;
    }
    Json episodes = Json::array();
    for (const EpisodeSummary& ep : run.result.trace.episodes) {
      Json je;
      je["index"] = ep.index;
      je["trigger_time"] = ep.trigger_time;
      je["end_time"] = ep.end_time;
      je["trigger_error"] = ep.trigger_error;
      je["estimate"] = Named(run.param_names, ep.estimate);
      je["estimate_residual"] = NumberOrNull(ep.estimate_residual);
      je["true_params"] = Named(run.param_names, ep.true_params);
      je["evaluations"] = ep.evaluations;
      je["proposals"] = ep.proposals;
      je["failed"] = ep.failed;
      if (ep.failed) je["failure"] = ep.failure;
      episodes.push_back(je);
      timing << "episode," << name << ",," << ep.index << ",,"
             << FormatDouble(ep.mean_prediction_seconds) << '\n';
    }
    jm["episode_summaries"] = episodes;
    methods.push_back(jm);
  }
  metrics["methods"] = methods;

  if (cfg.scenario == Scenario::kQuadrotor) {
    std::ostringstream table;
    table << header << "instant,method";
    AppendNames(table, first.param_names, "true_");
    AppendNames(table, first.param_names, "est_");
    table << ",mass_error,inertial_error,status\n";
    Json rows = Json::array();
    for (const AccuracyRow& row : report.table) {
      const std::string name(EstimationMethodName(row.method));
      table << FormatDouble(row.instant) << ',' << name;
      AppendVector(table, row.true_params, np);
      AppendVector(table, row.estimate, np);
      table << ',' << (row.no_episode ? "" : FormatDouble(row.mass_error))
            << ','
            << (row.no_episode ? "" : FormatDouble(row.inertial_error)) << ','
            << (row.no_episode ? "no-episode" : "ok") << '\n';
      Json jr;
      jr["instant"] = row.instant;
      jr["method"] = name;
      jr["true_params"] = Named(first.param_names, row.true_params);
      jr["estimate"] = row.no_episode ? Json(nullptr)
                                      : Named(first.param_names, row.estimate);
      jr["mass_error"] = NumberOrNull(row.mass_error);
      jr["inertial_error"] = NumberOrNull(row.inertial_error);
      jr["status"] = row.no_episode ? "no-episode" : "ok";
      rows.push_back(jr);
      timing << "table," << name << ',' << FormatDouble(row.instant) << ",,,"
             << FormatDouble(row.mean_prediction_seconds) << '\n';
    }
    metrics["table"] = rows;
    WriteFile(dir / "table1.csv", table.str());
  }

  WriteFile(dir / "trajectory.csv", traj.str());
  WriteFile(dir / "bo_trace.csv", trace.str());
  WriteFile(dir / "metrics.json", metrics.dump(2) + "\n");
  WriteFile(dir / "timing.csv", timing.str());
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const std::to_chars_result r = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, r.ptr);
}

}  // namespace bopest
