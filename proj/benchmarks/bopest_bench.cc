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


#include <benchmark/benchmark.h>

#include "bopest/bayes_opt.h"
#include "bopest/gp.h"
#include "bopest/quadrotor.h"
#include "bopest/random.h"

namespace bopest {
namespace {

Dataset RandomData(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j) x[j] = Uniform01(rng);
    data.Add(x, std::sin(3.0 * x.sum()) + 0.05 * Uniform01(rng));
  }
  return data;
}

void BM_GpFit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Dataset data = RandomData(n, 4, 1);
  const BoOptions o = DefaultBoOptions(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitHyperparams(data, o.initial_hyperparams, o.fit));
  }
}
BENCHMARK(BM_GpFit)->Arg(10)->Arg(35)->Unit(benchmark::kMillisecond);

void BM_GpPredict(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GpModel gp(RandomData(n, 4, 2), DefaultBoOptions(4).initial_hyperparams);
  const Eigen::Vector4d q(0.3, 0.4, 0.5, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(gp.Predict(q));
}
BENCHMARK(BM_GpPredict)->Arg(10)->Arg(35);

void BM_ProposeNext(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BoState bo(Domain::UnitCube(4), 100, RandomData(n, 4, 3),
                   DefaultBoOptions(4));
  AcquisitionConfig acq;
  for (auto _ : state) benchmark::DoNotOptimize(ProposeNext(bo, acq));
}
BENCHMARK(BM_ProposeNext)->Arg(5)->Arg(35)->Unit(benchmark::kMillisecond);

void BM_StepQuadrotor(benchmark::State& state) {
  const Integrator integ = state.range(0) ? Integrator::kRk4 : Integrator::kEuler;
  const QuadrotorParams p;
  QuadrotorState x;
  x.rate = {0.1, -0.2, 0.3};
  const QuadrotorInput u{p.mass * p.gravity, {0.01, 0.0, -0.01}};
  for (auto _ : state) {
    x = StepQuadrotor(x, u, p, 0.005, integ);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_StepQuadrotor)->Arg(0)->Arg(1);

void BM_GeometricController(benchmark::State& state) {
  GeometricController c(QuadrotorGains{}, QuadrotorReference{}, 0.005);
  const QuadrotorParams p;
  QuadrotorState x;
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c.Compute(x, t, p));
    t += 0.005;
  }
}
BENCHMARK(BM_GeometricController);

}  // namespace
}  // namespace bopest

BENCHMARK_MAIN();
