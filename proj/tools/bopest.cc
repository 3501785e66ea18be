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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bopest/error.h"
#include "bopest/harness.h"

namespace {

using bopest::EstimationMethod;
using bopest::ExperimentConfig;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> integrator;
  std::optional<std::string> method;
  bool disable_estimation = false;
};

void AddCommonFlags(CLI::App* app, CommonFlags* flags) {
  app->add_option("--seed", flags->seed, "base random seed");
  app->add_option("--out-dir", flags->out_dir, "artifact directory");
  app->add_option("--integrator", flags->integrator, "euler or rk4")
      ->check(CLI::IsMember({"euler", "rk4"}));
  app->add_option("--method", flags->method,
                  "bo, local-gradient, simplex or all")
      ->check(CLI::IsMember({"bo", "local-gradient", "simplex", "all"}));
  app->add_flag("--disable-estimation", flags->disable_estimation,
                "run the frozen nominal controller only");
}

void ApplyFlags(const CommonFlags& flags, ExperimentConfig* cfg) {
  if (flags.seed) {
    cfg->seed = *flags.seed;
    cfg->estimator.seed = *flags.seed;
  }
  if (flags.out_dir) cfg->output_dir = *flags.out_dir;
  if (flags.integrator) {
    cfg->integrator = *bopest::ParseIntegrator(*flags.integrator);
  }
  if (cfg->scenario == bopest::Scenario::kBoDemo1d) return;
  if (flags.disable_estimation) {
    cfg->methods = {EstimationMethod::kNone};
  } else if (flags.method) {
    if (*flags.method == "all") {
      cfg->methods = {EstimationMethod::kNone, EstimationMethod::kBo,
                      EstimationMethod::kLocalGradient,
                      EstimationMethod::kSimplex};
    } else {
      cfg->methods = {EstimationMethod::kNone,
                      *bopest::ParseEstimationMethod(*flags.method)};
    }
  }
  cfg->Validate();
}

nlohmann::ordered_json Summary(const bopest::ScenarioOutcome& outcome,
                               const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["scenario"] = std::string(bopest::ScenarioName(cfg.scenario));
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  j["incomplete"] = outcome.report.incomplete;
  if (outcome.report.demo) {
    const bopest::DemoResult& d = *outcome.report.demo;
    j["proposals_to_tolerance"] =
        d.proposals_to_tolerance ? nlohmann::ordered_json(*d.proposals_to_tolerance)
                                 : nlohmann::ordered_json(nullptr);
    j["final_distance"] = d.final_distance;
  }
  for (const bopest::MethodMetrics& m : outcome.report.methods) {
    nlohmann::ordered_json jm;
    for (std::size_t a = 0; a < m.axes.size(); ++a) {
      jm["mse_full"][m.axes[a]] = m.mse_full[a];
    }
    jm["episodes"] = m.episodes;
    jm["diverged"] = m.diverged;
    j["methods"][std::string(bopest::EstimationMethodName(m.method))] = jm;
  }
  return j;
}

int Execute(ExperimentConfig cfg) {
  const bopest::ScenarioOutcome outcome = bopest::RunScenario(cfg);
  bopest::WriteArtifacts(outcome, cfg, cfg.output_dir);
  std::cout << Summary(outcome, cfg).dump(2) << '\n';
  return outcome.report.incomplete ? 3 : 0;
}

void PrintError(std::string_view kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = {{"kind", std::string(kind)}, {"message", message}};
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online parameter estimation with Bayesian optimization"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run a scenario from a config file");
  run->add_option("config", config_path, "scenario config (JSON)")
      ->required();
  AddCommonFlags(run, &flags);

  CLI::App* demo = app.add_subcommand("demo-1d", "one-dimensional BO demo");
  AddCommonFlags(demo, &flags);

  std::vector<double> instants;
  std::string report_config;
  CLI::App* report =
      app.add_subcommand("report", "quadrotor accuracy table at given instants");
  report->add_option("config", report_config, "quadrotor config (JSON)");
  report->add_option("--instants", instants, "time instants in seconds");
  AddCommonFlags(report, &flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError("invalid-argument", e.what());
    return 2;
  }

  try {
    if (run->parsed()) {
      ExperimentConfig cfg = bopest::LoadConfig(config_path, flags.seed);
      ApplyFlags(flags, &cfg);
      return Execute(cfg);
    }
    if (demo->parsed()) {
      ExperimentConfig cfg = bopest::DefaultConfig(bopest::Scenario::kBoDemo1d);
      cfg.output_dir = "out/demo-1d";
      ApplyFlags(flags, &cfg);
      return Execute(cfg);
    }
    ExperimentConfig cfg =
        report_config.empty()
            ? bopest::DefaultConfig(bopest::Scenario::kQuadrotor)
            : bopest::LoadConfig(report_config, flags.seed);
    if (cfg.scenario != bopest::Scenario::kQuadrotor) {
      throw bopest::InvalidConfig("report requires the quadrotor scenario");
    }
    if (!instants.empty()) cfg.table_instants = instants;
    if (!flags.method) flags.method = "all";
    ApplyFlags(flags, &cfg);
    const bopest::ScenarioOutcome outcome = bopest::RunScenario(cfg);
    bopest::WriteArtifacts(outcome, cfg, cfg.output_dir);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const bopest::AccuracyRow& row : outcome.report.table) {
      nlohmann::ordered_json r;
      r["instant"] = row.instant;
      r["method"] = std::string(bopest::EstimationMethodName(row.method));
      r["true_mass"] = row.true_params[0];
      if (row.no_episode) {
        r["status"] = "no-episode";
      } else {
        r["estimated_mass"] = row.estimate[0];
        r["mass_error"] = row.mass_error;
        r["inertial_error"] = row.inertial_error;
        r["prediction_seconds"] = row.mean_prediction_seconds;
        r["status"] = "ok";
      }
      rows.push_back(r);
    }
    std::cout << rows.dump(2) << '\n';
    return outcome.report.incomplete ? 3 : 0;
  } catch (const bopest::Error& e) {
    PrintError(bopest::ErrorKindName(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    PrintError("internal", e.what());
    return 1;
  }
}
