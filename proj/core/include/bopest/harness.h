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

#ifndef BOPEST_HARNESS_H_
#define BOPEST_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bopest/baselines.h"
#include "bopest/estimator.h"
#include "bopest/integrator.h"
#include "bopest/schedule.h"

namespace bopest {

enum class Scenario { kBoDemo1d, kPendulum, kQuadrotor };

std::string_view ScenarioName(Scenario scenario);
std::optional<Scenario> ParseScenario(std::string_view name);

struct DemoConfig {
  int seed_points = 3;
  int max_proposals = 10;
  double tolerance = 0.02;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::kQuadrotor;
  std::uint64_t seed = 1;
  double t0 = 0.0;
  double tf = 16.0;
  double dt = 0.005;
  Integrator integrator = Integrator::kEuler;
  // Closed-loop runs to perform; kNone is the frozen nominal controller.
  std::vector<EstimationMethod> methods;

  PendulumSchedule pendulum_schedule;
  PendulumGains pendulum_gains;
  PendulumReference pendulum_reference;
  std::optional<PendulumState> pendulum_initial;  // default: at reference

  QuadrotorSchedule quadrotor_schedule;
  QuadrotorGains quadrotor_gains;
  QuadrotorReference quadrotor_reference;

  EstimatorConfig estimator;
  BaselineConfig baseline;  // method is set per run; empty start = nominal
  std::vector<double> table_instants;
  DemoConfig demo;
  std::string output_dir = "out";

  // Throws InvalidConfig with a descriptive message.
  void Validate() const;
};

// Committed defaults per scenario.
ExperimentConfig DefaultConfig(Scenario scenario);

// Parses a JSON document (comments allowed) over the scenario defaults.
// The seed is required unless `seed_override` is given.
ExperimentConfig ParseConfig(
    std::string_view text,
    std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig LoadConfig(
    const std::filesystem::path& path,
    std::optional<std::uint64_t> seed_override = std::nullopt);
// Fully resolved configuration, including the seed.
std::string ConfigToJson(const ExperimentConfig& cfg);

// Mean squared error of actual - reference over samples with
// window_start <= t <= window_end. Samples are ordered by time before
// accumulation. Throws InvalidArgument for an empty window.
double ComputeMse(std::span<const double> time, std::span<const double> actual,
                  std::span<const double> reference, double window_start,
                  double window_end);

double ComputeMse(const std::vector<TrajectorySample>& trajectory, int axis,
                  double window_start, double window_end);

struct MethodMetrics {
  EstimationMethod method = EstimationMethod::kNone;
  std::vector<std::string> axes;
  std::vector<double> mse_full;
  std::vector<double> mse_post_trigger;  // empty when nothing triggered
  std::optional<double> first_trigger;
  int episodes = 0;
  double mean_prediction_seconds = 0.0;
  ParameterVector final_params;
  double final_tracking_error = 0.0;
  bool diverged = false;
};

struct AccuracyRow {
  double instant = 0.0;
  EstimationMethod method = EstimationMethod::kBo;
  ParameterVector true_params;
  ParameterVector estimate;  // empty when no episode completed before instant
  double mass_error = 0.0;
  double inertial_error = 0.0;
  double mean_prediction_seconds = 0.0;
  bool no_episode = false;
};

struct DemoStep {
  int proposal = 0;  // 0 for seed points
  double x = 0.0;
  double y = 0.0;
  double incumbent_x = 0.0;
  double incumbent_y = 0.0;
  double expected_improvement = 0.0;
  double acquisition_seconds = 0.0;
};

struct DemoResult {
  std::vector<DemoStep> steps;
  double minimizer = 0.0;
  std::optional<int> proposals_to_tolerance;
  double final_distance = 0.0;
};

// Multimodal synthetic objective on [0, 1] (Forrester et al.):
//   f(x) = (6x - 2)^2 sin(12x - 4), global minimum near x = 0.7572.
double DemoObjective(double x);
double DemoMinimizer();

DemoResult RunDemo1d(std::uint64_t seed, const DemoConfig& cfg);

struct MethodRun {
  EstimationMethod method = EstimationMethod::kNone;
  SupervisionResult result;
  std::vector<std::string> axis_names;
  std::vector<std::string> state_names;
  std::vector<std::string> control_names;
  std::vector<std::string> param_names;
};

struct MetricsReport {
  Scenario scenario = Scenario::kQuadrotor;
  std::uint64_t seed = 0;
  std::vector<MethodMetrics> methods;
  std::vector<AccuracyRow> table;
  std::optional<DemoResult> demo;
  bool incomplete = false;
};

struct ScenarioOutcome {
  MetricsReport report;
  std::vector<MethodRun> runs;
};

// Per-instant accuracy for every estimating method in `runs`. The estimate
// at an instant is that of the latest episode finished by then.
std::vector<AccuracyRow> AccuracyTable(const std::vector<double>& instants,
                                        const QuadrotorSchedule& schedule,
                                        const std::vector<MethodRun>& runs);

// Simulates every configured method; divergence marks the report incomplete
// instead of throwing.
ScenarioOutcome RunScenario(const ExperimentConfig& cfg);

// Writes trajectory.csv, bo_trace.csv, metrics.json, table1.csv (quadrotor)
// and timing.csv into `dir`; the demo writes bo_trace.csv, metrics.json and
// timing.csv. All files but timing.csv are deterministic.
void WriteArtifacts(const ScenarioOutcome& outcome,
                    const ExperimentConfig& cfg,
                    const std::filesystem::path& dir);

// shortest round-trip decimal form
std::string FormatDouble(double value);

}  // namespace bopest

#endif  // BOPEST_HARNESS_H_
