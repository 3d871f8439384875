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

#include "optbench/config/experiment.hpp"
#include "optbench/sweep/training.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace optbench::config {

/// Generates or loads the dataset and fixes the train/test split.
std::shared_ptr<sweep::TrainingProblem const> build_problem(ExperimentFile const &file);

/// One configuration per (optimizer, batch size, sample), in file order.
/// Hyperparameters are drawn without replacement from each optimizer's grid
/// independently per batch size. Throws ConfigError when validation fails.
std::vector<sweep::ExperimentConfig> plan_sweep(
    ExperimentFile const &file, std::shared_ptr<sweep::TrainingProblem const> problem);

using RunCallback = std::function<void(std::size_t index, sweep::TrainingRun const &run)>;

/// Runs every configuration on up to `parallelism` threads (0 = hardware
/// concurrency). Results come back in plan order whatever the schedule.
/// The callback is serialized.
std::vector<sweep::TrainingRun> execute_sweep(std::vector<sweep::ExperimentConfig> const &plan,
                                              unsigned parallelism, RunCallback const &on_done = {});

}  // namespace optbench::config
