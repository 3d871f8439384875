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

#include "optbench/optim/sgd.hpp"

#include <cmath>

namespace optbench::optim {

void sgd_step(SgdState &state, ParameterVector &params, Vector const &gradient)
{
  if (gradient.size() != params.size())
  {
    throw ConfigError("gradient dimension does not match parameters");
  }
  double const mu = state.options.momentum;
  if (mu != 0.0)
  {
    if (state.momentum_buffer)
    {
      Vector &b = *state.momentum_buffer;
      b         = mu * b + (1.0 - SgdState::dampening) * gradient;
    }
    else
    {
      state.momentum_buffer = gradient;
    }
    params -= state.options.learning_rate * *state.momentum_buffer;
    return;
  }
  params -= state.options.learning_rate * gradient;
}

BatchStepResult sgd_batch_step(SgdState &state, BatchObjective const &objective,
                               ParameterVector &params)
{
  BatchStepResult result;
  result.loss_after = std::nan("");
  Evaluation eval   = objective.evaluate(params);
  result.evaluations = 1;
  result.loss_before = eval.loss;
  if (!eval.finite())
  {
    result.status = StepStatus::diverged;
    return result;
  }
  sgd_step(state, params, eval.gradient);
  if (!params.allFinite())
  {
    result.status = StepStatus::diverged;
  }
  return result;
}

}  // namespace optbench::optim
