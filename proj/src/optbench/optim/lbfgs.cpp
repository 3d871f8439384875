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

#include "optbench/optim/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace optbench::optim {

CurvatureHistory::CurvatureHistory(std::size_t capacity)
  : capacity_(capacity)
{
  if (capacity_ == 0)
  {
    throw ConfigError("L-BFGS memory must be at least 1");
  }
}

bool CurvatureHistory::push(Vector s, Vector y)
{
  double const ys = y.dot(s);
  if (!(ys > 0.0) || !std::isfinite(ys))
  {
    return false;
  }
  if (pairs_.size() == capacity_)
  {
    pairs_.pop_front();
  }
  pairs_.push_back({std::move(s), std::move(y), 1.0 / ys});
  return true;
}

Vector lbfgs_direction(CurvatureHistory const &history, Vector const &grad)
{
  auto const &pairs = history.pairs();
  Vector      q     = grad;
  std::vector<double> a(pairs.size());
  for (std::size_t i = pairs.size(); i-- > 0;)
  {
    a[i] = pairs[i].rho * pairs[i].s.dot(q);
    q -= a[i] * pairs[i].y;
  }
  // H0 = I
  for (std::size_t i = 0; i < pairs.size(); ++i)
  {
    double const b = pairs[i].rho * pairs[i].y.dot(q);
    q += (a[i] - b) * pairs[i].s;
  }
  return -q;
}

BatchStepResult lbfgs_batch_step(LbfgsState &state, BatchObjective const &objective,
                                 ParameterVector &params)
{
  BatchStepResult result;
  Evaluation      at_x = objective.evaluate(params);
  result.evaluations   = 1;
  result.loss_before   = at_x.loss;
  result.loss_after    = at_x.loss;
  if (!at_x.finite())
  {
    result.status = StepStatus::diverged;
    return result;
  }

  Vector const direction = lbfgs_direction(state.history, at_x.gradient);

  WolfeOptions search;
  search.alpha_cap    = state.options.learning_rate;
  search.max_searches = state.options.max_line_searches;
  if (state.history.empty())
  {
    double const gnorm = at_x.gradient.norm();
    if (gnorm > 0.0)
    {
      search.initial_alpha = std::min(1.0, 1.01 / gnorm);
    }
  }

  WolfeResult found = wolfe_line_search(objective, params, at_x, direction, search);
  result.evaluations += found.search.evaluations;
  if (!found.search.succeeded)
  {
    result.status = StepStatus::line_search_failed;
    return result;
  }

  Vector step = found.search.alpha * direction;
  params += step;
  result.loss_after = found.at_alpha.loss;
  if (!params.allFinite() || !found.at_alpha.finite())
  {
    result.status = StepStatus::diverged;
    return result;
  }
  state.history.push(std::move(step), found.at_alpha.gradient - at_x.gradient);
  return result;
}

}  // namespace optbench::optim
