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

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace optbench::optim {

enum class OptimizerId
{
  sgd,
  fr,
  lbfgs,
};

OptimizerId      parse_optimizer_id(std::string_view name);
std::string_view to_string(OptimizerId id);

/// Rank used to order optimizer levels in reports: sgd, fr, lbfgs, then others.
int optimizer_rank(std::string_view name);

using HyperValue = std::variant<double, std::string>;

/// Hyperparameter name/value pairs in declaration order.
using Assignment = std::vector<std::pair<std::string, HyperValue>>;

/// Exact names accepted per optimizer, as used in config files and CSVs.
std::span<std::string_view const> hyperparameter_names(OptimizerId id);

/// One message per problem: unknown names, wrong value types, out-of-range
/// values. Empty when the assignment is usable.
std::vector<std::string> check_assignment(OptimizerId id, Assignment const &assignment);

std::string assignment_to_json(Assignment const &assignment);
Assignment  assignment_from_json(std::string_view json);
std::string to_string(HyperValue const &value);

/// Uniform per-batch interface over the three optimizers. Each instance owns
/// the recurrence state of exactly one training session.
class Optimizer
{
public:
  virtual ~Optimizer() = default;

  virtual OptimizerId     id() const noexcept                                       = 0;
  virtual BatchStepResult step(BatchObjective const &objective, ParameterVector &params) = 0;
};

/// Throws ConfigError when check_assignment reports any problem. Missing
/// hyperparameters take their documented defaults.
std::unique_ptr<Optimizer> make_optimizer(OptimizerId id, Assignment const &assignment);

}  // namespace optbench::optim
