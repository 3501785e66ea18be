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


#include "bopest/gp.h"

#include <cmath>
#include <vector>

#include <Eigen/Cholesky>
#include <gtest/gtest.h>

#include "bopest/error.h"
#include "test_support.h"

namespace bopest {
namespace {

using testing::Gen;

KernelHyperparams Iso(int dim, double s2, double l, double noise = 0.0) {
  KernelHyperparams h;
  h.signal_variance = s2;
  h.lengthscales = Eigen::VectorXd::Constant(dim, l);
  h.noise_variance = noise;
  return h;
}

Eigen::VectorXd V(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

TEST(KernelTest, SelfCovarianceIsSignalVariance) {
  const KernelHyperparams h = KernelHyperparams::Unit(3);
  EXPECT_DOUBLE_EQ(Matern52(V({0.3, -1.0, 2.0}), V({0.3, -1.0, 2.0}), h), 1.0);
}

TEST(KernelTest, UnitDistanceClosedForm) {
  const double expected =
      (1.0 + std::sqrt(5.0) + 5.0 / 3.0) * std::exp(-std::sqrt(5.0));
  EXPECT_NEAR(Matern52(V({0.0}), V({1.0}), Iso(1, 1.0, 1.0)), expected,
              1e-15);
}

TEST(KernelTest, ArdScalingMatchesScalarForm) {
  KernelHyperparams h = Iso(2, 4.0, 1.0);
  h.lengthscales = V({3.0, 4.0});
  const double r = std::sqrt(2.0);
  const double expected = 4.0 * (1.0 + std::sqrt(5.0) * r + 5.0 * r * r / 3.0) *
                          std::exp(-std::sqrt(5.0) * r);
  EXPECT_NEAR(Matern52(V({0.0, 0.0}), V({3.0, 4.0}), h), expected, 1e-14);
}

TEST(KernelTest, DimensionMismatchThrows) {
  EXPECT_THROW(Matern52(V({0.0}), V({1.0, 2.0}), Iso(2, 1.0, 1.0)),
               InvalidArgument);
}

TEST(KernelTest, SymmetricAndBoundedOnRandomPairs) {
  Gen gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = gen.Int(1, 4);
    const KernelHyperparams h = gen.Hyperparams(d, 1e-6, 1e-2);
    const Eigen::VectorXd a = gen.Vector(d, -2.0, 2.0);
    const Eigen::VectorXd b = gen.Vector(d, -2.0, 2.0);
    const double kab = Matern52(a, b, h);
    EXPECT_EQ(kab, Matern52(b, a, h));
    EXPECT_GT(kab, 0.0);
    EXPECT_LE(kab, h.signal_variance);
    EXPECT_DOUBLE_EQ(Matern52(a, a, h), h.signal_variance);
    EXPECT_NEAR(kab, testing::ReferenceMatern52(a, b, h),
                1e-14 * h.signal_variance);
  }
}

TEST(HyperparamsTest, ValidateRejectsBadValues) {
  KernelHyperparams h = KernelHyperparams::Unit(2);
  h.signal_variance = 0.0;
  EXPECT_THROW(h.Validate(), InvalidArgument);
  h = KernelHyperparams::Unit(2);
  h.lengthscales[1] = -1.0;
  EXPECT_THROW(h.Validate(), InvalidArgument);
  h = KernelHyperparams::Unit(2);
  h.noise_variance = -1e-3;
  EXPECT_THROW(h.Validate(), InvalidArgument);
}

TEST(GramTest, SinglePointFactor) {
  const std::vector<ParameterVector> x = {V({0.5})};
  const GramFactor f = BuildGram(x, Iso(1, 1.0, 1.0), 1e-10, 1e-4);
  ASSERT_EQ(f.lower.rows(), 1);
  EXPECT_NEAR(f.lower(0, 0), std::sqrt(1.0 + 1e-10), 1e-15);
  EXPECT_EQ(f.jitter, 1e-10);
}

TEST(GramTest, DuplicatePointsNeedJitter) {
  const std::vector<ParameterVector> x = {V({0.5}), V({0.5})};
  const KernelHyperparams h = Iso(1, 1.0, 1.0);
  EXPECT_THROW(BuildGram(x, h, 0.0, 0.0), NumericalInstability);
  const GramFactor f = BuildGram(x, h, 1e-10, 1e-4);
  EXPECT_GT(f.jitter, 0.0);
}

TEST(GramTest, JitterStaysBelowCap) {
  // Near-duplicates at a lengthscale where the Gram matrix is numerically
  // singular; the default policy must stay at or below 1e-4 s2.
  const std::vector<ParameterVector> x = {V({0.0}), V({1e-9}), V({2e-9})};
  const KernelHyperparams h = Iso(1, 2.0, 1.0);
  const GramFactor f = BuildGram(x, h);
  EXPECT_LE(f.jitter, 1e-4 * 2.0 * (1 + 1e-12));
}

TEST(GramTest, FactorReproducesMatrix) {
  Gen gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = gen.Int(1, 4);
    const KernelHyperparams h = gen.Hyperparams(d, 1e-6, 1e-1);
    const std::vector<ParameterVector> x = gen.Points(3, d, 0.0, 1.0);
    const GramFactor f = BuildGram(x, h);
    Eigen::MatrixXd k(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        k(i, j) = testing::ReferenceMatern52(x[i], x[j], h);
      }
    }
    k.diagonal().array() += h.noise_variance + f.jitter;
    EXPECT_LT((f.lower * f.lower.transpose() - k).cwiseAbs().maxCoeff(),
              1e-10);
  }
}

TEST(PosteriorTest, EmptyDatasetReturnsPrior) {
  const GpModel gp(Dataset{}, Iso(2, 2.0, 0.3));
  const Posterior p = gp.Predict(V({0.1, 0.9}));
  EXPECT_EQ(p.mean, 0.0);
  EXPECT_EQ(p.variance, 2.0);
}

TEST(PosteriorTest, SinglePointInterpolation) {
  Dataset data;
  data.Add(V({0.4, 0.2}), 1.7);
  const GpModel gp(data, Iso(2, 1.0, 0.5));
  const Posterior p = gp.Predict(V({0.4, 0.2}));
  EXPECT_NEAR(p.mean, 1.7, 1e-8);
  EXPECT_NEAR(p.variance, 0.0, 1e-8);
}

TEST(PosteriorTest, FourPointsMatchDenseInverse) {
  Dataset data;
  data.Add(V({0.0, 0.0}), 1.0);
  data.Add(V({1.0, 0.0}), -0.5);
  data.Add(V({0.0, 1.0}), 0.25);
  data.Add(V({1.0, 1.0}), 2.0);
  KernelHyperparams h = Iso(2, 1.5, 0.7, 1e-3);
  h.lengthscales = V({0.7, 1.2});
  const GpModel gp(data, h);
  const Eigen::VectorXd q = V({0.37, 0.81});
  const testing::DenseOracle o = testing::DensePosterior(data, h, gp.jitter(), q);
  const Posterior p = gp.Predict(q);
  EXPECT_NEAR(p.mean, o.mean, 1e-8);
  EXPECT_NEAR(p.raw_variance, o.variance, 1e-8);
  EXPECT_NEAR(gp.LogMarginalLikelihood(), o.log_marginal_likelihood, 1e-8);
}

TEST(PosteriorTest, NoiseFreeModelInterpolatesTargets) {
  Gen gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = gen.Int(1, 3);
    const int n = gen.Int(2, d == 1 ? 3 : 12);
    const KernelHyperparams h = Iso(d, gen.LogUniform(0.5, 2.0), 0.3);
    // well separated points keep the Gram matrix off the jitter path
    Dataset data;
    while (data.size() < n) {
      const Eigen::VectorXd x = gen.Vector(d, 0.0, 1.0);
      bool separated = true;
      for (const Eigen::VectorXd& other : data.inputs) {
        separated = separated && (x - other).norm() >= 0.2;
      }
      if (separated) data.Add(x, gen.Uniform(-2.0, 2.0));
    }
    const GpModel gp(data, h);
    for (int i = 0; i < n; ++i) {
      const double y = data.targets[i];
      EXPECT_NEAR(gp.Predict(data.inputs[i]).mean, y,
                  1e-6 * std::max(1.0, std::abs(y)));
    }
  }
}

TEST(PosteriorTest, VarianceNonNegativeAndRawNearZeroBound) {
  Gen gen(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = gen.Int(1, 4);
    const KernelHyperparams h = gen.Hyperparams(d, 1e-4, 1e-1);
    Dataset data;
    for (const auto& x : gen.Points(gen.Int(1, 20), d, 0.0, 1.0)) {
      data.Add(x, gen.Uniform(-1.0, 1.0));
    }
    const GpModel gp(data, h);
    for (int q = 0; q < 20; ++q) {
      const Posterior p = gp.Predict(gen.Vector(d, -0.5, 1.5));
      EXPECT_GE(p.variance, 0.0);
      EXPECT_GE(p.raw_variance, -1e-6 * h.signal_variance);
    }
  }
}

TEST(PosteriorTest, NormalizationAndStandardizationRoundTrip) {
  // A model on a scaled box with standardized targets equals a plain model
  // on unit coordinates with rescaled targets.
  const Domain box(V({1.0, -4.0}), V({3.0, 6.0}));
  Gen gen(3);
  Dataset raw;
  Dataset unit;
  for (int i = 0; i < 8; ++i) {
    const Eigen::VectorXd u = gen.Vector(2, 0.0, 1.0);
    const double y = 10.0 + 3.0 * gen.Uniform(-1.0, 1.0);
    raw.Add(box.FromUnit(u), y);
    unit.Add(u, y);
  }
  GpOptions opts;
  opts.input_domain = box;
  opts.standardize_targets = true;
  const KernelHyperparams h = Iso(2, 1.0, 0.4, 1e-4);
  const GpModel gp(raw, h, opts);

  double mean = 0.0;
  for (double y : unit.targets) mean += y;
  mean /= unit.size();
  double var = 0.0;
  for (double y : unit.targets) var += (y - mean) * (y - mean);
  const double sd = std::sqrt(var / unit.size());
  Dataset scaled = unit;
  for (double& y : scaled.targets) y = (y - mean) / sd;
  const GpModel plain(scaled, h);

  const Eigen::VectorXd u = V({0.3, 0.6});
  const Posterior a = gp.Predict(box.FromUnit(u));
  const Posterior b = plain.Predict(u);
  EXPECT_NEAR(a.mean, mean + sd * b.mean, 1e-10);
  EXPECT_NEAR(a.variance, sd * sd * b.variance, 1e-10);
  EXPECT_NEAR(gp.target_offset(), mean, 1e-12);
  EXPECT_NEAR(gp.target_scale(), sd, 1e-12);
}

TEST(PosteriorTest, ConstantTargetsKeepUnitScale) {
  Dataset data;
  data.Add(V({0.1}), 3.0);
  data.Add(V({0.9}), 3.0);
  GpOptions opts;
  opts.standardize_targets = true;
  const GpModel gp(data, Iso(1, 1.0, 0.5), opts);
  EXPECT_EQ(gp.target_scale(), 1.0);
  EXPECT_NEAR(gp.Predict(V({0.5})).mean, 3.0, 1e-12);
}

TEST(LikelihoodTest, SinglePointClosedForms) {
  Dataset zero;
  zero.Add(V({0.0}), 0.0);
  EXPECT_NEAR(LogMarginalLikelihood(zero, Iso(1, 1.0, 1.0)),
              -0.5 * std::log(2.0 * M_PI), 1e-9);
  Dataset one;
  one.Add(V({0.0}), 1.0);
  EXPECT_NEAR(LogMarginalLikelihood(one, Iso(1, 1.5, 1.0, 0.5)),
              -0.25 - 0.5 * std::log(2.0) - 0.5 * std::log(2.0 * M_PI),
              1e-9);
}

TEST(LikelihoodTest, RandomInstancesMatchDenseOracle) {
  Gen gen(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = gen.Int(1, 4);
    const KernelHyperparams h = gen.Hyperparams(d, 1e-3, 1e-1);
    Dataset data;
    for (const auto& x : gen.Points(3, d, 0.0, 1.0)) {
      data.Add(x, gen.Uniform(-2.0, 2.0));
    }
    const double jitter = BuildGram(data.inputs, h).jitter;
    const testing::DenseOracle o =
        testing::DensePosterior(data, h, jitter, data.inputs[0]);
    EXPECT_NEAR(LogMarginalLikelihood(data, h), o.log_marginal_likelihood,
                1e-8);
  }
}

TEST(LikelihoodTest, EmptyDatasetThrows) {
  EXPECT_THROW(LogMarginalLikelihood(Dataset{}, Iso(1, 1.0, 1.0)),
               InvalidArgument);
}

// Draws f ~ GP(0, k) at sorted points on [0, 5].
Dataset SamplePrior(const KernelHyperparams& h, int n, std::uint64_t seed) {
  Gen gen(seed);
  Dataset data;
  std::vector<ParameterVector> x;
  for (int i = 0; i < n; ++i) x.push_back(V({5.0 * (i + 0.5) / n}));
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) k(i, j) = testing::ReferenceMatern52(x[i], x[j], h);
  }
  k.diagonal().array() += 1e-10;
  const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(k).matrixL();
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) {
    z[i] = std::normal_distribution<double>(0.0, 1.0)(gen.rng());
  }
  const Eigen::VectorXd f = l * z;
  for (int i = 0; i < n; ++i) data.Add(x[i], f[i]);
  return data;
}

TEST(FitTest, RecoversLengthscaleOfPriorSample) {
  const KernelHyperparams truth = Iso(1, 1.0, 0.5, 1e-8);
  const Dataset data = SamplePrior(truth, 20, 4);

  // Grid oracle over the lengthscale with the other hyperparameters fixed.
  double best_l = 0.0;
  double best_lml = -INFINITY;
  for (int i = 0; i <= 400; ++i) {
    const double l = std::exp(std::log(0.05) + i * std::log(100.0) / 400);
    const double lml = LogMarginalLikelihood(data, Iso(1, 1.0, l, 1e-8));
    if (lml > best_lml) {
      best_lml = lml;
      best_l = l;
    }
  }
  FitOptions opts;
  opts.fit_noise = false;
  opts.seed = 17;
  const FitResult fit = FitHyperparams(data, Iso(1, 1.0, 1.0, 1e-8), opts);
  const double l = fit.hyperparams.lengthscales[0];
  EXPECT_GT(best_l, 0.25);
  EXPECT_LT(best_l, 1.0);
  EXPECT_GT(l, 0.25);
  EXPECT_LT(l, 1.0);
  EXPECT_GE(fit.log_marginal_likelihood, fit.initial_log_marginal_likelihood);
  EXPECT_FALSE(fit.failed);
}

TEST(FitTest, NeverWorseThanInitialization) {
  Gen gen(31);
  for (int trial = 0; trial < 15; ++trial) {
    const int d = gen.Int(1, 3);
    Dataset data;
    for (const auto& x : gen.Points(gen.Int(2, 15), d, 0.0, 1.0)) {
      data.Add(x, std::sin(4.0 * x.sum()) + 0.1 * gen.Uniform(-1.0, 1.0));
    }
    const KernelHyperparams init = gen.Hyperparams(d, 1e-4, 1e-1);
    FitOptions opts;
    opts.seed = static_cast<std::uint64_t>(trial);
    opts.restarts = 2;
    opts.max_evals_per_restart = 100;
    const FitResult fit = FitHyperparams(data, init, opts);
    EXPECT_GE(fit.log_marginal_likelihood,
              LogMarginalLikelihood(data, init) - 1e-12);
    EXPECT_NEAR(fit.log_marginal_likelihood,
                LogMarginalLikelihood(data, fit.hyperparams), 1e-9);
  }
}

TEST(FitTest, StartAtGridOptimumDoesNotDecrease) {
  const Dataset data = SamplePrior(Iso(1, 1.0, 0.5, 1e-8), 12, 9);
  double best_l = 0.0;
  double best_lml = -INFINITY;
  for (int i = 0; i <= 200; ++i) {
    const double l = 0.1 + i * 0.01;
    const double lml = LogMarginalLikelihood(data, Iso(1, 1.0, l, 1e-8));
    if (lml > best_lml) {
      best_lml = lml;
      best_l = l;
    }
  }
  FitOptions opts;
  opts.fit_noise = false;
  const FitResult fit = FitHyperparams(data, Iso(1, 1.0, best_l, 1e-8), opts);
  EXPECT_GE(fit.log_marginal_likelihood, best_lml);
}

TEST(FitTest, ZeroTargetsDriveSignalVarianceDown) {
  Dataset data;
  for (int i = 0; i < 6; ++i) data.Add(V({i / 5.0}), 0.0);
  const KernelHyperparams init = Iso(1, 1.0, 0.3, 1e-4);
  FitOptions opts;
  opts.fit_noise = false;
  const FitResult fit = FitHyperparams(data, init, opts);
  EXPECT_GE(fit.log_marginal_likelihood, LogMarginalLikelihood(data, init));

  // Scan sigma_f^2 at the fitted lengthscale: the evidence is maximal at the
  // lower bound.
  KernelHyperparams probe = fit.hyperparams;
  double best_s2 = 0.0;
  double best_lml = -INFINITY;
  for (int i = 0; i <= 50; ++i) {
    probe.signal_variance = std::exp(std::log(1e-3) + i * std::log(1e5) / 50);
    const double lml = LogMarginalLikelihood(data, probe);
    if (lml > best_lml) {
      best_lml = lml;
      best_s2 = probe.signal_variance;
    }
  }
  EXPECT_NEAR(best_s2, opts.bounds.min_signal_variance, 1e-12);
  EXPECT_LT(fit.hyperparams.signal_variance, 2.0 * best_s2);
}

TEST(FitTest, DeterministicForSeed) {
  const Dataset data = SamplePrior(Iso(1, 1.0, 0.5, 1e-8), 10, 2);
  FitOptions opts;
  opts.seed = 123;
  const FitResult a = FitHyperparams(data, Iso(1, 1.0, 1.0, 1e-4), opts);
  const FitResult b = FitHyperparams(data, Iso(1, 1.0, 1.0, 1e-4), opts);
  EXPECT_EQ(a.log_marginal_likelihood, b.log_marginal_likelihood);
  EXPECT_EQ(a.hyperparams.lengthscales[0], b.hyperparams.lengthscales[0]);
  EXPECT_EQ(a.hyperparams.noise_variance, b.hyperparams.noise_variance);
}

TEST(FitTest, RejectsTooFewPoints) {
  Dataset data;
  data.Add(V({0.0}), 1.0);
  EXPECT_THROW(FitHyperparams(data, Iso(1, 1.0, 1.0)), InvalidArgument);
}

}  // namespace
}  // namespace bopest
