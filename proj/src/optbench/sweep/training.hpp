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

#include "optbench/objective/dataset.hpp"
#include "optbench/objective/model.hpp"
#include "optbench/optim/optimizer.hpp"
#include "optbench/stats/observation.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace optbench::sweep {

/// Model plus data shared read-only by every run of a sweep. For test
/// functions `data` is null and `train` only fixes the number of samples
/// per epoch.
struct TrainingProblem
{
  objective::ModelSpec                        model;
  std::shared_ptr<objective::Dataset const>   data;
  std::vector<std::size_t>                    train;
  std::vector<std::size_t>                    test;

  std::size_t train_size() const noexcept { return train.size(); }
};

struct ExperimentConfig
{
  optim::OptimizerId                     optimizer  = optim::OptimizerId::sgd;
  std::size_t                            batch_size = 1;
  optim::Assignment                      hyperparameters;
  std::uint64_t                          seed   = 0;
  int                                    epochs = 100;
  std::shared_ptr<TrainingProblem const> problem;
};

enum class RunStatus
{
  completed,
  diverged,
  error,
};

std::string_view to_string(RunStatus status);
RunStatus        parse_run_status(std::string_view text);

struct TrainingRun
{
  std::string         run_id;
  ExperimentConfig    config;
  std::vector<double> epoch_test_accuracy;
  std::vector<double> epoch_wall_seconds;  // cumulative, one per completed epoch
  double              peak_accuracy = 0.0;
  int                 peak_epoch    = 0;  // 1-based; 0 when no epoch completed
  double              ttpa_seconds  = 0.0;
  RunStatus           status        = RunStatus::completed;
  double              total_seconds = 0.0;
  std::string         message;
};

/// Throws ConfigError when the batch size does not divide the training set,
/// the hyperparameters are invalid or the model does not fit the data.
void validate_config(ExperimentConfig const &config);

/// Recomputes peak_accuracy, peak_epoch and ttpa_seconds from the epoch
/// vectors. The earliest epoch wins ties. With no completed epoch the peak is
/// 0 and TTPA equals the total time.
void finalize_peak(TrainingRun &run);

/// Trains for config.epochs epochs, each a fresh shuffled batch plan with one
/// optimizer batch step per batch followed by a full test-set evaluation.
/// Stops with status diverged on any non-finite loss, gradient or parameter.
/// Invalid configurations yield status error with no epochs.
TrainingRun run_training(ExperimentConfig const &config);

stats::ObservationTable runs_to_observations(std::span<TrainingRun const> runs);

}  // namespace optbench::sweep
