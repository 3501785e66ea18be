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

#ifndef BOPEST_ERROR_H_
#define BOPEST_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bopest {

enum class ErrorKind {
  kInvalidArgument,
  kNumericalInstability,
  kSimulationDiverged,
  kInvalidParameter,
  kInvalidConfig,
};

// stable machine-readable name, e.g. "invalid-argument"
std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error(ErrorKind::kInvalidArgument, message) {}
};

class NumericalInstability : public Error {
 public:
  explicit NumericalInstability(const std::string& message)
      : Error(ErrorKind::kNumericalInstability, message) {}
};

class InvalidConfig : public Error {
 public:
  explicit InvalidConfig(const std::string& message)
      : Error(ErrorKind::kInvalidConfig, message) {}
};

// Raised when an integration step produces a non-finite state.
class SimulationDiverged : public Error {
 public:
  SimulationDiverged(double time, const std::string& message)
      : Error(ErrorKind::kSimulationDiverged, message), time_(time) {}

  double time() const { return time_; }

 private:
  double time_;
};

// Raised when a model evaluated at `theta` is non-finite.
class InvalidParameter : public Error {
 public:
  InvalidParameter(std::vector<double> theta, const std::string& message)
      : Error(ErrorKind::kInvalidParameter, message),
        theta_(std::move(theta)) {}

  const std::vector<double>& theta() const { return theta_; }

 private:
  std::vector<double> theta_;
};

}  // namespace bopest

#endif  // BOPEST_ERROR_H_
