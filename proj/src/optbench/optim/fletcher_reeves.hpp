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
#include "optbench/optim/line_search.hpp"

#include <optional>
#include <string_view>

namespace optbench::optim {

enum class BetaVariant
{
  norm_ratio,     // |g_i| / |g_{i-1}|
  squared_ratio,  // |g_i|^2 / |g_{i-1}|^2, the textbook Fletcher-Reeves form
};

BetaVariant      parse_beta_variant(std::string_view name);
std::string_view to_string(BetaVariant variant);

/// max(0, ratio of gradient norms); 0 when the previous norm vanishes.
double fr_beta(Vector const &grad_now, Vector const &grad_prev,
               BetaVariant variant = BetaVariant::norm_ratio);

/// s = descent + beta * prev_direction, or s = descent without history.
Vector fr_direction(Vector const &descent, double beta, Vector const *prev_direction);

struct FrOptions
{
  double      learning_rate     = 1.0;  // initial backtracking step
  double      contraction       = 0.5;
  int         max_line_searches = 10;
  int         steps_per_batch   = 2;
  BetaVariant beta_variant      = BetaVariant::norm_ratio;
};

struct FrState
{
  FrOptions             options;
  std::optional<Vector> prev_gradient;
  std::optional<Vector> prev_direction;

  void clear()
  {
    prev_gradient.reset();
    prev_direction.reset();
  }
};

/// Runs steps_per_batch nonlinear CG iterations on one batch. Conjugacy is
/// reset on entry, so nothing carries over between batches. The descent
/// vector is -grad; when s_i is not a descent direction it is restarted to
/// -grad. A failed backtracking search still applies its smallest step.
BatchStepResult fr_batch_step(FrState &state, BatchObjective const &objective,
                              ParameterVector &params);

}  // namespace optbench::optim
