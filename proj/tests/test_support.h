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


#ifndef BOPEST_TESTS_TEST_SUPPORT_H_
#define BOPEST_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "bopest/gp.h"
#include "bopest/random.h"

namespace bopest::testing {

// Small hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(rng_); }
  int Int(int lo, int hi) {
    return lo + static_cast<int>(Uniform01(rng_) * (hi - lo + 1));
  }
  double LogUniform(double lo, double hi);
  Eigen::VectorXd Vector(int dim, double lo, double hi);
  std::vector<Eigen::VectorXd> Points(int n, int dim, double lo, double hi);
  KernelHyperparams Hyperparams(int dim, double min_noise, double max_noise);
  Rng& rng() { return rng_; }

 private:
  Rng rng_;
};

inline double Gen::LogUniform(double lo, double hi) {
  return std::exp(Uniform(std::log(lo), std::log(hi)));
}

inline Eigen::VectorXd Gen::Vector(int dim, double lo, double hi) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Uniform(lo, hi);
  return v;
}

inline std::vector<Eigen::VectorXd> Gen::Points(int n, int dim, double lo,
                                                double hi) {
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < n; ++i) out.push_back(Vector(dim, lo, hi));
  return out;
}

inline KernelHyperparams Gen::Hyperparams(int dim, double min_noise,
                                          double max_noise) {
  KernelHyperparams h;
  h.signal_variance = LogUniform(0.2, 5.0);
  h.lengthscales.resize(dim);
  for (int i = 0; i < dim; ++i) h.lengthscales[i] = LogUniform(0.2, 2.0);
  h.noise_variance = LogUniform(min_noise, max_noise);
  return h;
}

// Matern 5/2 written out independently of the library.
inline double ReferenceMatern52(const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b,
                                const KernelHyperparams& h) {
  double r2 = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double d = (a[i] - b[i]) / h.lengthscales[i];
    r2 += d * d;
  }
  const double r = std::sqrt(r2);
  const double s5r = std::sqrt(5.0) * r;
  return h.signal_variance * (1.0 + s5r + 5.0 * r2 / 3.0) * std::exp(-s5r);
}

struct DenseOracle {
  double mean = 0.0;
  double variance = 0.0;
  double log_marginal_likelihood = 0.0;
};

// Posterior and evidence from an explicit inverse and LU determinant of
// K + (noise + jitter) I, in raw coordinates.
inline DenseOracle DensePosterior(const Dataset& data,
                                  const KernelHyperparams& h, double jitter,
                                  const Eigen::VectorXd& q) {
  const int n = data.size();
  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd ks(n);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      k(i, j) = ReferenceMatern52(data.inputs[i], data.inputs[j], h);
    }
    k(i, i) += h.noise_variance + jitter;
    ks[i] = ReferenceMatern52(data.inputs[i], q, h);
    y[i] = data.targets[i];
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
  const Eigen::MatrixXd inv = lu.inverse();
  DenseOracle out;
  out.mean = ks.dot(inv * y);
  out.variance = h.signal_variance - ks.dot(inv * ks);
  out.log_marginal_likelihood = -0.5 * y.dot(inv * y) -
                                0.5 * std::log(lu.determinant()) -
                                0.5 * n * std::log(2.0 * M_PI);
  return out;
}

}  // namespace bopest::testing

#endif  // BOPEST_TESTS_TEST_SUPPORT_H_
