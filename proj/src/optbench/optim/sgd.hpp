// Copyright 2026 The optbench Authors
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

#pragma once

#include "optbench/optim/batch_objective.hpp"

#include <optional>

namespace optbench::optim {

struct SgdOptions
{
  double learning_rate = 0.01;
  double momentum      = 0.0;
};

/// PyTorch-style heavy-ball SGD with dampening and weight decay fixed at 0.
struct SgdState
{
  static constexpr double dampening = 0.0;

  SgdOptions            options;
  std::optional<Vector> momentum_buffer;
};

// With momentum: b <- g on the first step, b <- mu b + (1 - dampening) g
// afterwards, and the step uses b in place of g. Then theta <- theta - lr g.
void sgd_step(SgdState &state, ParameterVector &params, Vector const &gradient);

BatchStepResult sgd_batch_step(SgdState &state, BatchObjective const &objective,
                               ParameterVector &params);

}  // namespace optbench::optim
