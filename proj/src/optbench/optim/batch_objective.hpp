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

#include "optbench/common.hpp"
#include "optbench/objective/model.hpp"

#include <functional>

namespace optbench::optim {

using objective::Evaluation;

/// The objective restricted to one fixed minibatch. `value`, when set, is a
/// cheaper loss-only oracle used by searches that need no slope.
struct BatchObjective
{
  std::function<Evaluation(Vector const &)> evaluate;
  std::function<double(Vector const &)>     value;

  double value_at(Vector const &x) const { return value ? value(x) : evaluate(x).loss; }
};

enum class StepStatus
{
  ok,
  line_search_failed,  // FR: smallest step was taken; L-BFGS: no step was taken
  diverged,
};

struct BatchStepResult
{
  StepStatus status      = StepStatus::ok;
  double     loss_before = 0.0;
  double     loss_after  = 0.0;  // NaN when the optimizer does not observe it
  int        evaluations = 0;
};

}  // namespace optbench::optim
