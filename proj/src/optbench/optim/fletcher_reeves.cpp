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

#include "optbench/optim/fletcher_reeves.hpp"

#include <algorithm>
#include <cmath>

namespace optbench::optim {

BetaVariant parse_beta_variant(std::string_view name)
{
  if (name == "unsquared" || name == "norm_ratio")
  {
    return BetaVariant::norm_ratio;
  }
  if (name == "squared" || name == "squared_ratio")
  {
    return BetaVariant::squared_ratio;
  }
  throw ConfigError("unknown beta_variant '" + std::string(name) +
                    "' (expected 'unsquared' or 'squared')");
}

std::string_view to_string(BetaVariant variant)
{
  return variant == BetaVariant::norm_ratio ? "unsquared" : "squared";
}

double fr_beta(Vector const &grad_now, Vector const &grad_prev, BetaVariant variant)
{
  double const prev = grad_prev.norm();
  if (!(prev > 0.0))
  {
    return 0.0;
  }
  double ratio = grad_now.norm() / prev;
  if (variant == BetaVariant::squared_ratio)
  {
    ratio *= ratio;
  }
  return std::max(0.0, ratio);
}

Vector fr_direction(Vector const &descent, double beta, Vector const *prev_direction)
{
  if (prev_direction == nullptr || beta == 0.0)
  {
    return descent;
  }
  if (prev_direction->size() != descent.size())
  {
    throw ConfigError("previous direction dimension mismatch");
  }
  return descent + beta * *prev_direction;
}

BatchStepResult fr_batch_step(FrState &state, BatchObjective const &objective,
                              ParameterVector &params)
{
  auto const &opt = state.options;
  if (opt.steps_per_batch < 1)
  {
    throw ConfigError("steps_per_batch must be at least 1");
  }
  state.clear();

  BatchStepResult result;
  BacktrackingOptions const search{opt.learning_rate, opt.contraction, opt.max_line_searches};
  bool any_failed = false;

  for (int step = 0; step < opt.steps_per_batch; ++step)
  {
    Evaluation eval = objective.evaluate(params);
    ++result.evaluations;
    if (step == 0)
    {
      result.loss_before = eval.loss;
    }
    if (!eval.finite())
    {
      result.status     = StepStatus::diverged;
      result.loss_after = eval.loss;
      return result;
    }

    Vector const descent = -eval.gradient;
    double const beta =
        state.prev_gradient ? fr_beta(eval.gradient, *state.prev_gradient, opt.beta_variant) : 0.0;
    Vector direction =
        fr_direction(descent, beta, state.prev_direction ? &*state.prev_direction : nullptr);
    if (!(eval.gradient.dot(direction) < 0.0))
    {
      direction = descent;
    }

    double     trial_value = eval.loss;
    auto const found =
        backtracking_line_search(objective, params, eval.loss, eval.gradient, direction, search,
                                 &trial_value);
    result.evaluations += found.evaluations;
    any_failed = any_failed || !found.succeeded;

    params += found.alpha * direction;
    result.loss_after    = found.evaluations > 0 ? trial_value : eval.loss;
    state.prev_gradient  = eval.gradient;
    state.prev_direction = std::move(direction);

    if (!params.allFinite())
    {
      result.status = StepStatus::diverged;
      return result;
    }
  }
  if (any_failed)
  {
    result.status = StepStatus::line_search_failed;
  }
  return result;
}

}  // namespace optbench::optim
