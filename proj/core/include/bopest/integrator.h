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

#ifndef BOPEST_INTEGRATOR_H_
#define BOPEST_INTEGRATOR_H_

#include <optional>
#include <string_view>

namespace bopest {

enum class Integrator { kEuler, kRk4 };

std::string_view IntegratorName(Integrator integrator);
std::optional<Integrator> ParseIntegrator(std::string_view name);

}  // namespace bopest

#endif  // BOPEST_INTEGRATOR_H_
